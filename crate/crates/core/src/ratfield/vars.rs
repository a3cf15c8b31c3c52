use std::fmt;
use std::sync::{OnceLock, RwLock};

/// Interned variable identifier. `x` and `y` are always ids 0 and 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

struct Interner {
    names: Vec<String>,
}

fn interner() -> &'static RwLock<Interner> {
    static INSTANCE: OnceLock<RwLock<Interner>> = OnceLock::new();
    INSTANCE.get_or_init(|| {
        // Seed the common symbols in a fixed order so variable ids (and hence
        // the canonical term order) do not depend on call order.
        let mut names: Vec<String> = vec!["x".into(), "y".into(), "t".into()];
        for base in ["a", "b"] {
            names.push(base.to_string());
            for ord in 1..=4usize {
                for ones in (0..=ord).rev() {
                    let word: String = std::iter::repeat('1')
                        .take(ones)
                        .chain(std::iter::repeat('2').take(ord - ones))
                        .collect();
                    names.push(format!("{base}_{word}"));
                }
            }
        }
        names.push("K".into());
        for ord in 1..=2usize {
            for ones in (0..=ord).rev() {
                let word: String = std::iter::repeat('1')
                    .take(ones)
                    .chain(std::iter::repeat('2').take(ord - ones))
                    .collect();
                names.push(format!("K_{word}"));
            }
        }
        RwLock::new(Interner { names })
    })
}

impl Var {
    pub fn intern(name: &str) -> Var {
        {
            let guard = interner().read().unwrap();
            if let Some(pos) = guard.names.iter().position(|n| n == name) {
                return Var(pos as u32);
            }
        }
        let mut guard = interner().write().unwrap();
        if let Some(pos) = guard.names.iter().position(|n| n == name) {
            return Var(pos as u32);
        }
        guard.names.push(name.to_string());
        Var((guard.names.len() - 1) as u32)
    }

    pub fn lookup(name: &str) -> Option<Var> {
        let guard = interner().read().unwrap();
        guard.names.iter().position(|n| n == name).map(|p| Var(p as u32))
    }

    pub fn name(self) -> String {
        interner().read().unwrap().names[self.0 as usize].clone()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub const VAR_X: Var = Var(0);
pub const VAR_Y: Var = Var(1);
pub const VAR_T: Var = Var(2);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interner_is_stable() {
        assert_eq!(Var::intern("x"), VAR_X);
        assert_eq!(Var::intern("y"), VAR_Y);
        assert_eq!(Var::intern("t"), VAR_T);
        let v = Var::intern("zz_custom");
        assert_eq!(Var::intern("zz_custom"), v);
        assert_eq!(v.name(), "zz_custom");
    }
}

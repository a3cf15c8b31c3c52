use webrank_core::expr::parse_ratfunc;
use webrank_core::obstruct::{kappa_multibracket, kappa_prolongation};
use webrank_core::webcalc::{frame, WebDef};

fn main() {
    let webs: Vec<(&str, Vec<&str>)> = vec![
        ("bol", vec!["x", "y", "x/y", "(1-y)/(1-x)", "(x-x*y)/(y-x*y)"]),
        ("k5", vec!["x", "y", "x/y", "x/((x-1)*(y-1))", "y/((x-1)*(y-1))"]),
        ("const", vec!["x", "y", "x*y+x^2/2", "x^2*y+2*x^3/3", "x^3*y+3*x^4/4"]),
        ("rank1", vec!["x", "y", "x*y^2/(x-y)^2", "x^2*y/(x-y)^2"]),
    ];
    for (name, fols) in webs {
        let t0 = std::time::Instant::now();
        let fr = frame(WebDef::new(fols.iter().map(|s| parse_ratfunc(s, &["x", "y"]).unwrap()).collect()).unwrap()).unwrap();
        let kp = kappa_prolongation(&fr).unwrap();
        let t1 = t0.elapsed();
        let km = kappa_multibracket(&fr).unwrap();
        let t2 = t0.elapsed();
        println!("{name}: prolong {:?}, bracket {:?}, agree: {}, zero: {}", t1, t2 - t1, kp.coeffs == km.coeffs, km.is_zero());
        for (i, c) in km.coeffs.iter().enumerate() {
            if !c.is_zero() { println!("   c{}: {}", i, c); }
        }
    }
}

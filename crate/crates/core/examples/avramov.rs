use transverse::obstruction::avramov_obstruction;
use transverse::{Field, MonomialIdeal, Ring};

fn main() {
    let r = Ring::standard(4, Field::Rational);
    let m = MonomialIdeal::parse(&r, &["x1^2", "x1*x2", "x2*x3", "x3*x4", "x4^2"]).unwrap();
    let a = MonomialIdeal::parse(&r, &["x1^2", "x4^2"]).unwrap();
    let t = std::time::Instant::now();
    let rep = avramov_obstruction(&r, &a, &m, None).unwrap();
    print!("{}", rep.render());
    println!("well defined: {} in {:?}", rep.well_defined(), t.elapsed());
}

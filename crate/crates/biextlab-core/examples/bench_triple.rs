use biextlab_core::abgroup::{FgAbGroup, GroupHom};
use biextlab_core::complex::TwoTermComplex;
use biextlab_core::matrix::Matrix;
use biextlab_core::pairing::{les_check, verify_main_theorem};
use std::time::Instant;

fn main() {
    let z3 = FgAbGroup::cyclic(3);
    let k = TwoTermComplex::new(GroupHom::new(z3.clone(), z3.clone(), Matrix::from_rows(&[&[0]])).unwrap());
    let k3 = TwoTermComplex::new(GroupHom::new(z3.clone(), z3.clone(), Matrix::from_rows(&[&[1]])).unwrap());
    let t = Instant::now();
    let rep = verify_main_theorem(&k, &k, &k3, 16).unwrap();
    println!("verify (Z/3,Z/3;Z/3 triple): {:?}, verdicts {:?} {:?}", t.elapsed(), rep.verdict0, rep.verdict1);
    let t = Instant::now();
    let rep = les_check(&k, &k, &k3, 16).unwrap();
    println!("les: {:?}, exact: {:?}", t.elapsed(), rep.exact);
    // worst |B| = 4 case
    let z4 = FgAbGroup::cyclic(4);
    let k4 = TwoTermComplex::new(GroupHom::new(z4.clone(), z4.clone(), Matrix::from_rows(&[&[2]])).unwrap());
    let t = Instant::now();
    let rep = verify_main_theorem(&k4, &k4, &TwoTermComplex::from_group(z4.clone()), 16).unwrap();
    println!("verify (Z/4,Z/4;Z/4): {:?}, verdicts {:?} {:?}", t.elapsed(), rep.verdict0, rep.verdict1);
    let t = Instant::now();
    let rep = les_check(&k4, &k4, &k4, 16).unwrap();
    println!("les Z/4: {:?}, exact: {:?}", t.elapsed(), rep.exact);
}

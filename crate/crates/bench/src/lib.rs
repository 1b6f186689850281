//! Fixtures shared by the benchmarks.

use hecke_rgroup::inductiongroupoid::{DeltaSpec, ExtendedGroupoid};
use hecke_rgroup::intlin::rational::rat;
use hecke_rgroup::rootdata::{
    build_classical, Family, LabelFunction, LabelSpec, LatticeSpec, RootDatum,
};
use hecke_rgroup::weyl::TorusPoint;
use hecke_rgroup::weylgroupoid::WeylGroupoid;

pub fn datum(family: Family, n: usize) -> RootDatum {
    build_classical(family, n, &LatticeSpec::Root).expect("classical datum")
}

pub fn groupoid(family: Family, n: usize) -> WeylGroupoid {
    WeylGroupoid::new(&datum(family, n)).expect("groupoid")
}

/// Principal series groupoid with equal labels `q`.
pub fn principal(family: Family, n: usize, q: i64) -> (ExtendedGroupoid, LabelFunction) {
    let rd = datum(family, n);
    let labels = LabelFunction::new(&rd, &LabelSpec::Uniform(rat(q))).expect("labels");
    let eg = ExtendedGroupoid::new(&rd, &DeltaSpec::Principal).expect("extended groupoid");
    (eg, labels)
}

/// A point with every coordinate equal to `value` (e.g. `"1/2"`).
pub fn constant_point(rank: usize, value: &str) -> TorusPoint {
    TorusPoint::parse(&vec![value; rank]).expect("torus point")
}

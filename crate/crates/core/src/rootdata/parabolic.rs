//! Restriction of a root datum to a parabolic subsystem `R_P`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{pairing, LabelFunction, RootDatum};
use crate::error::{Error, Result};
use crate::intlin::rational::{self, Rat};
use crate::intlin::{row_lattice_basis, row_lattice_saturation, IntegerMatrix};
use crate::subset::Subset;

/// The data attached to `P ⊆ F_0`: the Levi datum `(X, Y, R_P, R_P^vee, P)`
/// and the semisimple datum `(X_P, Y_P, R_P, R_P^vee, P)`, where `X_P` is the
/// projection of `X` onto `QP` along the annihilator of `P^vee`.
///
/// Vectors of `QP` are written in `P`-coordinates, i.e. as coefficient
/// vectors with respect to the roots of `P` in increasing index order.
#[derive(Clone, Debug)]
pub struct ParabolicRestriction {
    pub p: Subset,
    /// Indices of `R_P` in the ambient datum.
    pub roots: Vec<usize>,
    /// Indices into `R_nr` of `QR_P ∩ R_nr`.
    pub nr_roots: Vec<usize>,
    /// Basis of `X_P` in `P`-coordinates.
    pub xp_basis: Vec<Vec<Rat>>,
    /// Basis of `X ∩ QP` in `P`-coordinates.
    pub saturation_basis: Vec<Vec<Rat>>,
    /// `[X_P : X ∩ QP]`.
    pub index: BigInt,
    /// `(X, Y, R_P, R_P^vee, P)`.
    pub levi: RootDatum,
    /// `(X_P, Y_P, R_P, R_P^vee, P)` in the coordinates of `xp_basis`.
    pub quotient: RootDatum,
    /// Root `k` of `levi` is root `levi_to_ambient[k]` of the ambient datum.
    pub levi_to_ambient: Vec<usize>,
    pub quotient_to_ambient: Vec<usize>,
}

/// Coefficients in `P`-coordinates of the projection of `x` onto `QP`.
pub fn project_to_p(rd: &RootDatum, p: Subset, x: &[i64]) -> Vec<Rat> {
    let idx = p.indices();
    let cartan = rd.cartan_matrix();
    let a: Vec<Vec<Rat>> = idx
        .iter()
        .map(|&b| {
            idx.iter()
                .map(|&g| Rat::from_integer(cartan[b][g].into()))
                .collect()
        })
        .collect();
    let v: Vec<Rat> = idx
        .iter()
        .map(|&b| Rat::from_integer(pairing(x, rd.coroot(b)).into()))
        .collect();
    rational::solve(&a, &v, idx.len()).expect("Cartan matrix is invertible")
}

fn integer_lattice_basis(gens: &[Vec<Rat>], dim: usize) -> Result<Vec<Vec<Rat>>> {
    if dim == 0 {
        return Ok(vec![]);
    }
    let den = gens
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| {
            g.iter()
                .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let basis = row_lattice_basis(&IntegerMatrix::from_rows_with_cols(&rows, dim)?);
    Ok(basis
        .into_iter()
        .map(|r| r.into_iter().map(|x| Rat::new(x, den.clone())).collect())
        .collect())
}

fn coords_in(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let dim = v.len();
    let bt = rational::transpose(basis, dim);
    rational::solve(&bt, v, basis.len())
}

fn to_i64_vec(v: &[Rat]) -> Result<Vec<i64>> {
    rational::as_integers(v)
        .ok_or_else(|| Error::Inconsistent("expected an integral vector".into()))?
        .iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::GuardExceeded("entry exceeds 64 bits".into())))
        .collect()
}

pub fn parabolic_restriction(rd: &RootDatum, p: Subset) -> Result<ParabolicRestriction> {
    if !p.is_subset_of(&Subset::full(rd.semisimple_rank())) {
        return Err(Error::InvalidInput(format!(
            "{p} is not a subset of the {} simple roots",
            rd.semisimple_rank()
        )));
    }
    let idx = p.indices();
    let np = idx.len();
    let roots = rd.parabolic_roots(p);
    let nr = rd.nonreduced();
    let nr_roots: Vec<usize> = (0..nr.len())
        .filter(|&k| roots.contains(&nr.roots[k].base))
        .collect();

    // X_P: projections of the standard basis of X.
    let gens: Vec<Vec<Rat>> = (0..rd.rank())
        .map(|i| {
            let mut e = vec![0; rd.rank()];
            e[i] = 1;
            project_to_p(rd, p, &e)
        })
        .collect();
    let xp_basis = integer_lattice_basis(&gens, np)?;

    // X ∩ QP.
    let saturation_basis: Vec<Vec<Rat>> = if np == 0 {
        vec![]
    } else {
        let pm = IntegerMatrix::from_rows_with_cols(
            &idx.iter().map(|&i| rd.root(i).to_vec()).collect::<Vec<_>>(),
            rd.rank(),
        )?;
        row_lattice_saturation(&pm)
            .iter()
            .map(|row| {
                let x: Vec<i64> = row.iter().map(|v| i64::try_from(v).unwrap()).collect();
                project_to_p(rd, p, &x)
            })
            .collect()
    };
    let index = if np == 0 {
        BigInt::one()
    } else {
        let m: Vec<Vec<BigInt>> = saturation_basis
            .iter()
            .map(|s| {
                let c = coords_in(&xp_basis, s)
                    .ok_or_else(|| Error::Inconsistent("X ∩ QP not inside X_P".into()))?;
                rational::as_integers(&c)
                    .ok_or_else(|| Error::Inconsistent("X ∩ QP not inside X_P".into()))
            })
            .collect::<Result<_>>()?;
        IntegerMatrix::from_rows_with_cols(&m, np)?
            .determinant()?
            .abs()
    };

    let simple_x: Vec<Vec<i64>> = idx.iter().map(|&i| rd.root(i).to_vec()).collect();
    let simple_y: Vec<Vec<i64>> = idx.iter().map(|&i| rd.coroot(i).to_vec()).collect();
    let levi = RootDatum::from_simple_system(
        &format!("{} Levi {p}", rd.name()),
        rd.rank(),
        &simple_x,
        &simple_y,
    )?;
    let levi_to_ambient = levi
        .roots()
        .iter()
        .map(|r| rd.root_index(r).expect("Levi roots are roots"))
        .collect();

    // The quotient datum in X_P-coordinates; coroots pair with b_i through
    // <b_i, beta^vee> = sum_g b_i[g] <alpha_g, beta^vee>.
    let pair_basis = |b: &[Rat], beta: usize| -> Rat {
        b.iter()
            .zip(&idx)
            .map(|(c, &g)| c * Rat::from_integer(pairing(rd.root(g), rd.coroot(beta)).into()))
            .fold(Rat::zero(), |a, x| a + x)
    };
    let mut qx = vec![];
    let mut qy = vec![];
    for (k, &g) in idx.iter().enumerate() {
        let mut unit = vec![Rat::zero(); np];
        unit[k] = Rat::one();
        let c = coords_in(&xp_basis, &unit)
            .ok_or_else(|| Error::Inconsistent("simple root not in X_P".into()))?;
        qx.push(to_i64_vec(&c)?);
        let y: Vec<Rat> = xp_basis.iter().map(|b| pair_basis(b, g)).collect();
        qy.push(to_i64_vec(&y)?);
    }
    let quotient =
        RootDatum::from_simple_system(&format!("{} semisimple part {p}", rd.name()), np, &qx, &qy)?;
    let quotient_to_ambient = (0..quotient.num_roots())
        .map(|k| {
            let coef = quotient.simple_coefficients(k);
            roots
                .iter()
                .copied()
                .find(|&r| {
                    let c = rd.simple_coefficients(r);
                    idx.iter().zip(coef).all(|(&g, &x)| c[g] == x)
                })
                .expect("quotient roots come from R_P")
        })
        .collect();

    Ok(ParabolicRestriction {
        p,
        roots,
        nr_roots,
        xp_basis,
        saturation_basis,
        index,
        levi,
        quotient,
        levi_to_ambient,
        quotient_to_ambient,
    })
}

impl ParabolicRestriction {
    fn restrict(
        &self,
        target: &RootDatum,
        map: &[usize],
        rd: &RootDatum,
        q: &LabelFunction,
    ) -> Result<LabelFunction> {
        let values = target
            .nonreduced()
            .roots
            .iter()
            .map(|r| {
                let base = map[r.base];
                let k = if r.doubled {
                    rd.nonreduced().double_of[base].ok_or_else(|| {
                        Error::Inconsistent(
                            "doubled root of the restriction is not doubled in R_nr".into(),
                        )
                    })?
                } else {
                    base
                };
                Ok(q.values()[k].clone())
            })
            .collect::<Result<Vec<_>>>()?;
        LabelFunction::from_values(target, values)
    }

    /// `q_P`, the restriction of `q` to the semisimple datum.
    pub fn quotient_labels(&self, rd: &RootDatum, q: &LabelFunction) -> Result<LabelFunction> {
        self.restrict(&self.quotient, &self.quotient_to_ambient, rd, q)
    }

    /// `q^P`, the restriction of `q` to the Levi datum.
    pub fn levi_labels(&self, rd: &RootDatum, q: &LabelFunction) -> Result<LabelFunction> {
        self.restrict(&self.levi, &self.levi_to_ambient, rd, q)
    }
}

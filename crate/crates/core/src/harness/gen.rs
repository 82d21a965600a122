use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::canon::{DualArray, Quaternity};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Element, Ring};
use crate::sylvester::{SystemInstance, SystemKind};

/// Every sampled dimension lies in `min..=max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimBounds {
    pub min: usize,
    pub max: usize,
}

impl DimBounds {
    pub fn new(min: usize, max: usize) -> Result<DimBounds> {
        if min > max {
            return Err(Error::Parse(format!("dimension bounds {min}..={max} are empty")));
        }
        Ok(DimBounds { min, max })
    }

    /// `1..=max`.
    pub fn up_to(max: usize) -> DimBounds {
        DimBounds { min: 1.min(max), max }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.gen_range(self.min..=self.max)
    }
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Element {
    let num = rng.gen_range(-3..=3);
    let den = *[1, 2, 3].choose(rng).expect("nonempty");
    Ring::Rationals.from_ratio(num, den).expect("nonzero denominator")
}

pub fn gen_element<R: Rng + ?Sized>(ring: Ring, rng: &mut R) -> Element {
    match ring {
        Ring::PrimeField(p) => ring.from_i64(rng.gen_range(0..p) as i64),
        Ring::Rationals => small_rational(rng),
        Ring::RationalQuaternions => {
            let coords: Vec<Element> = (0..4).map(|_| small_rational(rng)).collect();
            ring.from_coords(&coords).expect("four coordinates")
        }
    }
}

/// Entries drawn independently: residues uniform, rationals `n/d` with
/// `n ∈ [-3, 3]`, `d ∈ {1, 2, 3}`, quaternions with such components.
pub fn gen_matrix<R: Rng + ?Sized>(ring: Ring, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| gen_element(ring, rng))
}

/// A product of `rows×rank` and `rank×cols` random factors.
pub fn gen_low_rank<R: Rng + ?Sized>(ring: Ring, rows: usize, cols: usize, rank: usize, rng: &mut R) -> Matrix {
    let l = gen_matrix(ring, rows, rank, rng);
    let r = gen_matrix(ring, rank, cols, rng);
    l.matmul(&r).expect("conformable factors")
}

/// Random matrix whose rank bound is itself uniform in `0..=min(rows, cols)`.
pub fn gen_structured<R: Rng + ?Sized>(ring: Ring, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let k = rng.gen_range(0..=rows.min(cols));
    if k == rows.min(cols) && rng.gen_bool(0.5) {
        gen_matrix(ring, rows, cols, rng)
    } else {
        gen_low_rank(ring, rows, cols, k, rng)
    }
}

pub fn gen_invertible<R: Rng + ?Sized>(ring: Ring, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = gen_matrix(ring, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.matmul(b).expect("conformable")
}

fn plus(a: &Matrix, b: &Matrix) -> Matrix {
    a.add(b).expect("same shape")
}

/// A quaternity whose members share row and column spaces often enough
/// for the coupled invariants to be nonzero.
pub fn gen_quaternity<R: Rng + ?Sized>(ring: Ring, bounds: DimBounds, rng: &mut R) -> Quaternity {
    let [m, p, q, s, t] = [(); 5].map(|_| bounds.sample(rng));
    let a = gen_structured(ring, m, p, rng);
    let b = match rng.gen_range(0..3) {
        0 => gen_structured(ring, m, q, rng),
        1 => mul(&a, &gen_structured(ring, p, q, rng)),
        _ => plus(
            &mul(&a, &gen_structured(ring, p, q, rng)),
            &gen_low_rank(ring, m, q, 1, rng),
        ),
    };
    let c = match rng.gen_range(0..3) {
        0 => gen_structured(ring, s, p, rng),
        1 => mul(&gen_structured(ring, s, m, rng), &a),
        _ => plus(
            &mul(&gen_structured(ring, s, m, rng), &a),
            &gen_low_rank(ring, s, p, 1, rng),
        ),
    };
    let d = match rng.gen_range(0..4) {
        0 => gen_structured(ring, t, p, rng),
        1 => mul(&gen_structured(ring, t, s, rng), &c),
        2 => plus(
            &mul(&gen_structured(ring, t, s, rng), &c),
            &mul(&gen_structured(ring, t, m, rng), &a),
        ),
        _ => plus(
            &mul(&gen_structured(ring, t, s, rng), &c),
            &gen_low_rank(ring, t, p, 1, rng),
        ),
    };
    Quaternity::new(a, b, c, d).expect("consistent shapes")
}

/// A dual array with column-space and row-space coupling between members.
pub fn gen_dual_array<R: Rng + ?Sized>(ring: Ring, bounds: DimBounds, rng: &mut R) -> DualArray {
    let [p1, m1, q1, s1, t1] = [(); 5].map(|_| bounds.sample(rng));
    let e = gen_structured(ring, p1, m1, rng);
    let f = match rng.gen_range(0..3) {
        0 => gen_structured(ring, p1, s1, rng),
        1 => mul(&e, &gen_structured(ring, m1, s1, rng)),
        _ => plus(
            &mul(&e, &gen_structured(ring, m1, s1, rng)),
            &gen_low_rank(ring, p1, s1, 1, rng),
        ),
    };
    let g = match rng.gen_range(0..4) {
        0 => gen_structured(ring, p1, t1, rng),
        1 => mul(&f, &gen_structured(ring, s1, t1, rng)),
        2 => plus(
            &mul(&f, &gen_structured(ring, s1, t1, rng)),
            &mul(&e, &gen_structured(ring, m1, t1, rng)),
        ),
        _ => plus(
            &mul(&f, &gen_structured(ring, s1, t1, rng)),
            &gen_low_rank(ring, p1, t1, 1, rng),
        ),
    };
    let h = match rng.gen_range(0..3) {
        0 => gen_structured(ring, q1, m1, rng),
        1 => mul(&gen_structured(ring, q1, p1, rng), &e),
        _ => plus(
            &mul(&gen_structured(ring, q1, p1, rng), &e),
            &gen_low_rank(ring, q1, m1, 1, rng),
        ),
    };
    DualArray::new(e, f, g, h).expect("consistent shapes")
}

fn gen_coefficients<R: Rng + ?Sized>(
    kind: SystemKind,
    ring: Ring,
    bounds: DimBounds,
    rng: &mut R,
) -> BTreeMap<String, Matrix> {
    let mut dims: BTreeMap<char, usize> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for &(name, r, c) in kind.coefficients() {
        let rows = *dims.entry(r).or_insert_with(|| bounds.sample(rng));
        let cols = *dims.entry(c).or_insert_with(|| bounds.sample(rng));
        out.insert(name.to_string(), gen_structured(ring, rows, cols, rng));
    }
    out
}

/// Right-hand-side shapes implied by the coefficients.
fn rhs_shapes(kind: SystemKind, coeffs: &BTreeMap<String, Matrix>) -> Vec<(&'static str, usize, usize)> {
    let shape = |name: &str| {
        let (base, star) = match name.strip_suffix('*') {
            Some(b) => (b, true),
            None => (name, false),
        };
        let (r, c) = coeffs[base].shape();
        if star {
            (c, r)
        } else {
            (r, c)
        }
    };
    kind.equations()
        .iter()
        .map(|eq| {
            let first = eq.terms[0];
            let rows = shape(first.left.expect("leading term has a left factor")).0;
            let cols = shape(first.right.expect("leading term has a right factor")).1;
            (eq.rhs, rows, cols)
        })
        .collect()
}

fn with_zero_rhs(kind: SystemKind, ring: Ring, coeffs: &BTreeMap<String, Matrix>) -> SystemInstance {
    let mut matrices = coeffs.clone();
    for (name, r, c) in rhs_shapes(kind, coeffs) {
        matrices.insert(name.to_string(), Matrix::zeros(ring, r, c));
    }
    SystemInstance::new(kind, ring, matrices).expect("generated shapes are consistent")
}

fn hermitian_kind_ring(kind: SystemKind, ring: Ring) -> Result<()> {
    if kind.is_hermitian() && ring.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    Ok(())
}

/// Random unknowns for `inst`, Hermitian where the kind demands.
pub fn gen_unknowns<R: Rng + ?Sized>(inst: &SystemInstance, rng: &mut R) -> Result<BTreeMap<String, Matrix>> {
    let shapes = inst.unknown_shapes(inst.kind.equations())?;
    let mut out = BTreeMap::new();
    for (name, (r, c)) in shapes {
        let mut u = gen_matrix(inst.ring, r, c, rng);
        if inst.kind.hermitian_unknowns().contains(&name) {
            u = u.add(&u.conjugate_transpose())?;
        }
        out.insert(name.to_string(), u);
    }
    Ok(out)
}

/// Substitutes `unknowns` into every equation to produce the right-hand sides.
pub fn instance_from_unknowns(inst: &SystemInstance, unknowns: &BTreeMap<String, Matrix>) -> Result<SystemInstance> {
    let mut matrices = inst.matrices.clone();
    for eq in inst.kind.equations() {
        matrices.insert(eq.rhs.to_string(), inst.evaluate(eq, unknowns)?);
    }
    SystemInstance::new(inst.kind, inst.ring, matrices)
}

/// Samples unknowns first and computes the right-hand sides from them.
pub fn gen_solvable_instance<R: Rng + ?Sized>(
    kind: SystemKind,
    ring: Ring,
    bounds: DimBounds,
    rng: &mut R,
) -> Result<SystemInstance> {
    hermitian_kind_ring(kind, ring)?;
    let coeffs = gen_coefficients(kind, ring, bounds, rng);
    let shell = with_zero_rhs(kind, ring, &coeffs);
    let unknowns = gen_unknowns(&shell, rng)?;
    instance_from_unknowns(&shell, &unknowns)
}

fn nonzero<R: Rng + ?Sized>(ring: Ring, self_conjugate: bool, rng: &mut R) -> Element {
    loop {
        let mut e = gen_element(ring, rng);
        if self_conjugate {
            e = &e + &e.conjugate();
        }
        if !e.is_zero() {
            return e;
        }
    }
}

fn random_rhs<R: Rng + ?Sized>(ring: Ring, rows: usize, cols: usize, hermitian: bool, rng: &mut R) -> Matrix {
    let m = gen_matrix(ring, rows, cols, rng);
    if hermitian {
        m.add(&m.conjugate_transpose()).expect("square")
    } else {
        m
    }
}

/// One of three shapes of instance, chosen uniformly: solvable by
/// construction, solvable then perturbed in one entry, or with fully random
/// right-hand sides. Hermitian requirements on the right-hand sides are kept.
pub fn gen_random_instance<R: Rng + ?Sized>(
    kind: SystemKind,
    ring: Ring,
    bounds: DimBounds,
    rng: &mut R,
) -> Result<SystemInstance> {
    hermitian_kind_ring(kind, ring)?;
    let mode = rng.gen_range(0..3);
    let coeffs = gen_coefficients(kind, ring, bounds, rng);
    let shell = with_zero_rhs(kind, ring, &coeffs);
    let mut matrices = if mode == 2 {
        let mut m = coeffs.clone();
        for (name, r, c) in rhs_shapes(kind, &coeffs) {
            let herm = kind.hermitian_rhs().contains(&name);
            m.insert(name.to_string(), random_rhs(ring, r, c, herm, rng));
        }
        m
    } else {
        let unknowns = gen_unknowns(&shell, rng)?;
        instance_from_unknowns(&shell, &unknowns)?.matrices
    };
    if mode == 1 {
        let candidates: Vec<&str> = kind
            .rhs_names()
            .into_iter()
            .filter(|n| matrices[*n].rows() > 0 && matrices[*n].cols() > 0)
            .collect();
        if let Some(&name) = candidates.choose(rng) {
            let target = matrices.get_mut(name).expect("rhs present");
            let i = rng.gen_range(0..target.rows());
            let j = rng.gen_range(0..target.cols());
            let herm = kind.hermitian_rhs().contains(&name);
            let e = nonzero(ring, herm && i == j, rng);
            target.set(i, j, target.get(i, j) + &e);
            if herm && i != j {
                target.set(j, i, target.get(j, i) + &e.conjugate());
            }
        }
    }
    SystemInstance::new(kind, ring, matrices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sylvester::check;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_and_shaped() {
        let r = Ring::RationalQuaternions;
        let a = gen_matrix(r, 2, 3, &mut ChaCha8Rng::seed_from_u64(9));
        let b = gen_matrix(r, 2, 3, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
        assert_eq!(a.shape(), (2, 3));
    }

    #[test]
    fn rank_distribution_is_nondegenerate() {
        let r = Ring::PrimeField(3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let nonzero = (0..1000).filter(|_| gen_matrix(r, 3, 3, &mut rng).rank() >= 1).count();
        assert!(nonzero > 900, "{nonzero}");
    }

    #[test]
    fn solvable_instances_pass_their_checker() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for kind in SystemKind::ALL {
            for ring in [Ring::PrimeField(3), Ring::Rationals] {
                let inst = gen_solvable_instance(kind, ring, DimBounds::up_to(3), &mut rng).unwrap();
                for name in kind.hermitian_rhs() {
                    assert!(inst.matrix(name).unwrap().is_hermitian());
                }
                assert!(check(&inst).unwrap().verdict, "{kind} over {ring}");
            }
        }
    }

    #[test]
    fn zero_unknowns_give_zero_rhs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ring = Ring::PrimeField(5);
        let kind = SystemKind::TwoUnknown;
        let shell = with_zero_rhs(kind, ring, &gen_coefficients(kind, ring, DimBounds::up_to(3), &mut rng));
        let zeros: BTreeMap<String, Matrix> = shell
            .unknown_shapes(kind.equations())
            .unwrap()
            .into_iter()
            .map(|(k, (r, c))| (k.to_string(), Matrix::zeros(ring, r, c)))
            .collect();
        let inst = instance_from_unknowns(&shell, &zeros).unwrap();
        assert!(kind.rhs_names().iter().all(|n| inst.matrix(n).unwrap().is_zero()));
    }

    #[test]
    fn characteristic_two_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let err = gen_solvable_instance(
            SystemKind::HermitianCongruence,
            Ring::PrimeField(2),
            DimBounds::up_to(2),
            &mut rng,
        );
        assert_eq!(err.unwrap_err(), Error::CharacteristicTwo);
    }

    #[test]
    fn bounds() {
        assert!(DimBounds::new(3, 2).is_err());
        let b = DimBounds::new(0, 0).unwrap();
        assert_eq!(b.sample(&mut ChaCha8Rng::seed_from_u64(0)), 0);
    }
}

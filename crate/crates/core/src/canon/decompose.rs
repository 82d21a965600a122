//! Constructive simultaneous equivalence.
//!
//! Work happens in the column space `F^p` of `P`. With `K = ker A`,
//! `W = A^-1(col B)`, `Kc = ker C` and `Kd = ker D`, each of the eighteen
//! column blocks of `P` is a basis of a piece of `F^p` lying in a prescribed
//! combination of these four subspaces. Pieces are split off one at a time;
//! after each split every subspace is cut down to what remains. The row
//! transforms `M`, `S`, `T` then come from the images of the pieces.

use serde::Serialize;

use super::forms::{build_canonical_dual, build_canonical_quaternity, CanonicalDual, CanonicalQuaternity};
use super::invariants::{check_dual_shapes, check_quaternity_shapes, dual_invariants, quaternity_invariants};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Ring;
use crate::subspace::Subspace;

/// `M A P = S_a`, `M B Q = S_b`, `S C P = S_c`, `T D P = S_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCertificate {
    pub m: Matrix,
    pub p: Matrix,
    pub q: Matrix,
    pub s: Matrix,
    pub t: Matrix,
    pub targets: CanonicalQuaternity,
}

/// `P1 E M1 = S_e`, `P1 F S1 = S_f`, `P1 G T1 = S_g`, `Q1 H M1 = S_h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualCertificate {
    pub p1: Matrix,
    pub m1: Matrix,
    pub q1: Matrix,
    pub s1: Matrix,
    pub t1: Matrix,
    pub targets: CanonicalDual,
}

fn failure(stage: &str, detail: impl Into<String>) -> Error {
    Error::DecompositionFailure {
        stage: stage.to_string(),
        detail: detail.into(),
    }
}

fn check_product(stage: &str, factors: &[&Matrix], target: &Matrix) -> Result<()> {
    let got = Matrix::product(factors)?;
    if &got != target {
        return Err(failure(stage, "product differs from its canonical target"));
    }
    Ok(())
}

fn check_invertible(name: &str, m: &Matrix) -> Result<()> {
    m.invert()
        .map(|_| ())
        .map_err(|e| failure(name, format!("transform is not invertible: {e}")))
}

impl DecompositionCertificate {
    /// Re-checks invertibility and all four products exactly.
    pub fn verify(&self, a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<()> {
        for (name, m) in [
            ("M", &self.m),
            ("P", &self.p),
            ("Q", &self.q),
            ("S", &self.s),
            ("T", &self.t),
        ] {
            check_invertible(name, m)?;
        }
        let tg = &self.targets;
        check_product("MAP", &[&self.m, a, &self.p], &tg.s_a)?;
        check_product("MBQ", &[&self.m, b, &self.q], &tg.s_b)?;
        check_product("SCP", &[&self.s, c, &self.p], &tg.s_c)?;
        check_product("TDP", &[&self.t, d, &self.p], &tg.s_d)
    }
}

impl DualCertificate {
    pub fn verify(&self, e: &Matrix, f: &Matrix, g: &Matrix, h: &Matrix) -> Result<()> {
        for (name, m) in [
            ("P1", &self.p1),
            ("M1", &self.m1),
            ("Q1", &self.q1),
            ("S1", &self.s1),
            ("T1", &self.t1),
        ] {
            check_invertible(name, m)?;
        }
        let tg = &self.targets;
        check_product("P1EM1", &[&self.p1, e, &self.m1], &tg.s_e)?;
        check_product("P1FS1", &[&self.p1, f, &self.s1], &tg.s_f)?;
        check_product("P1GT1", &[&self.p1, g, &self.t1], &tg.s_g)?;
        check_product("Q1HM1", &[&self.q1, h, &self.m1], &tg.s_h)
    }
}

struct Members {
    k: Subspace,
    w: Subspace,
    kc: Subspace,
    kd: Subspace,
}

impl Members {
    fn restrict(&mut self, y: &Subspace) {
        for s in [&mut self.k, &mut self.w, &mut self.kc, &mut self.kd] {
            *s = s.intersect(y);
        }
    }
}

struct Peeler {
    ring: Ring,
    p: usize,
    y: Subspace,
    mem: Members,
}

impl Peeler {
    /// Takes `piece` (a basis inside `y`) and moves on to `rest`, which
    /// must complement it in `y`.
    fn take_top(&mut self, piece: Matrix, rest: Subspace) -> Matrix {
        self.y = rest;
        self.mem.restrict(&self.y);
        piece
    }

    /// Takes the subspace `u`; what remains is `r` plus a complement of
    /// `r + u` in `y`.
    fn take_bottom(&mut self, u: &Subspace, r: &Subspace) -> Result<Matrix> {
        let ru = r.sum(u);
        let filler = ru.complement_in(&self.y)?;
        let rest = Matrix::hstack(&[r.basis(), &filler])?;
        self.y = Subspace::span(&rest);
        self.mem.restrict(&self.y);
        Ok(u.basis().clone())
    }

    fn sum(&self, parts: &[&Subspace]) -> Subspace {
        Subspace::sum_all(self.ring, self.p, parts)
    }
}

pub fn decompose_quaternity(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<DecompositionCertificate> {
    check_quaternity_shapes(a, b, c, d)?;
    let ring = a.ring();
    let inv = quaternity_invariants(a, b, c, d)?;
    let targets = build_canonical_quaternity(ring, &inv)?;
    let (m, p, q) = (a.rows(), a.cols(), b.cols());

    let mut pl = Peeler {
        ring,
        p,
        y: Subspace::full(ring, p),
        mem: Members {
            k: Subspace::kernel(a),
            w: Subspace::preimage(a, b)?,
            kc: Subspace::kernel(c),
            kd: Subspace::kernel(d),
        },
    };
    let mut blk: Vec<Option<Matrix>> = vec![None; 18];

    // pieces outside some member, largest sums first
    let rest = pl.sum(&[&pl.mem.w, &pl.mem.kc, &pl.mem.kd]);
    let piece = rest.complement_in(&pl.y)?;
    blk[0] = Some(pl.take_top(piece, rest));

    let rest = pl.mem.w.sum(&pl.mem.kc);
    let piece = pl.mem.kd.intersect(&rest).complement_in(&pl.mem.kd)?;
    blk[1] = Some(pl.take_top(piece, rest));

    let rest = pl.mem.w.sum(&pl.mem.kd);
    let piece = pl.mem.kc.intersect(&rest).complement_in(&pl.mem.kc)?;
    blk[2] = Some(pl.take_top(piece, rest));

    let rest = pl.sum(&[&pl.mem.k, &pl.mem.kc, &pl.mem.kd]);
    let piece = pl.mem.w.intersect(&rest).complement_in(&pl.mem.w)?;
    blk[7] = Some(pl.take_top(piece, rest));

    let rest = pl.mem.kc.sum(&pl.mem.kd);
    let piece = pl.mem.k.intersect(&rest).complement_in(&pl.mem.k)?;
    blk[14] = Some(pl.take_top(piece, rest));

    // intersections, innermost first
    let zero = Subspace::zero(ring, p);
    let u = pl.mem.k.intersect(&pl.mem.kc).intersect(&pl.mem.kd);
    blk[17] = Some(pl.take_bottom(&u, &zero)?);

    let u = pl.mem.w.intersect(&pl.mem.kc).intersect(&pl.mem.kd);
    let r = pl.mem.k.clone();
    blk[11] = Some(pl.take_bottom(&u, &r)?);

    let u = pl.mem.kc.intersect(&pl.mem.kd);
    let r = pl.mem.w.clone();
    blk[5] = Some(pl.take_bottom(&u, &r)?);

    let u = pl.mem.k.intersect(&pl.mem.kd);
    let r = pl.mem.kc.clone();
    blk[15] = Some(pl.take_bottom(&u, &r)?);

    let u = pl.mem.k.intersect(&pl.mem.kc);
    let r = pl.mem.kd.clone();
    blk[16] = Some(pl.take_bottom(&u, &r)?);

    let wd = pl.mem.w.intersect(&pl.mem.kd);
    let r = pl.mem.k.sum(&pl.mem.kc);
    let u = Subspace::span(&wd.intersect(&r).complement_in(&wd)?);
    blk[8] = Some(pl.take_bottom(&u, &r)?);

    let wc = pl.mem.w.intersect(&pl.mem.kc);
    let r = pl.mem.k.sum(&pl.mem.kd);
    let u = Subspace::span(&wc.intersect(&r).complement_in(&wc)?);
    blk[9] = Some(pl.take_bottom(&u, &r)?);

    // paired pieces: equal images under D
    let mem = &pl.mem;
    let b11 = mem.w.intersect(&mem.kc).basis().clone();
    let (b13, _) = mem
        .k
        .split(&mem.kd, &b11)
        .map_err(|e| failure("pair W∩Kc", e.to_string()))?;
    let s5 = mem.kc.intersect(&mem.k.sum(&mem.kd));
    let b5 = mem
        .w
        .intersect(&mem.kc)
        .complement_in(&s5)
        .map_err(|e| failure("pair Kc∩(K+Kd)", e.to_string()))?;
    let (b14, _) = mem
        .k
        .split(&mem.kd, &b5)
        .map_err(|e| failure("pair Kc∩(K+Kd)", e.to_string()))?;
    let b4 = s5
        .complement_in(&mem.kc)
        .map_err(|e| failure("pair Kc", e.to_string()))?;
    let (b7, _) = mem
        .w
        .split(&mem.kd, &b4)
        .map_err(|e| failure("pair Kc", e.to_string()))?;
    blk[3] = Some(b4);
    blk[4] = Some(b5);
    blk[6] = Some(b7);
    blk[10] = Some(b11);
    blk[12] = Some(b13);
    blk[13] = Some(b14);

    let blocks: Vec<Matrix> = blk.into_iter().map(|b| b.expect("every block assigned")).collect();
    for (i, (block, &want)) in blocks.iter().zip(targets.column_partition_p.iter()).enumerate() {
        if block.cols() != want {
            return Err(failure(
                &format!("P block {i}"),
                format!("found {} columns, invariants require {want}", block.cols()),
            ));
        }
    }
    let cols = |idx: &[usize]| -> Result<Matrix> {
        let parts: Vec<&Matrix> = idx.iter().map(|&i| &blocks[i]).collect();
        Matrix::hstack_sized(ring, p, &parts)
    };
    let all: Vec<usize> = (0..18).collect();
    let p_mat = cols(&all)?;
    check_invertible("P", &p_mat)?;

    // M and Q
    let a_w = a.matmul(&cols(&[6, 7, 8, 9, 10, 11])?)?;
    let a_rest = a.matmul(&cols(&[0, 1, 2, 3, 4, 5])?)?;
    let q_solve = b
        .solve_right(&a_w)?
        .ok_or_else(|| failure("Q", "image of W is not inside col B"))?;
    let stacked = Matrix::hstack(&[&a_w, b])?;
    let ext: Vec<usize> = stacked
        .pivot_columns()
        .into_iter()
        .filter(|&c| c >= a_w.cols())
        .map(|c| c - a_w.cols())
        .collect();
    let b_ext = b.columns(&ext);
    let q_mat = Matrix::hstack_sized(
        ring,
        q,
        &[
            &q_solve,
            &Matrix::identity(ring, q).columns(&ext),
            &b.right_null_space(),
        ],
    )?;
    let m_inv = with_complement(ring, m, &[&a_w, &b_ext, &a_rest])?;

    let c_img: Vec<Matrix> = [&[0, 1][..], &[6, 7, 8], &[12, 13, 14, 15]]
        .iter()
        .map(|idx| c.matmul(&cols(idx)?))
        .collect::<Result<_>>()?;
    let s_inv = with_complement(ring, c.rows(), &c_img.iter().collect::<Vec<_>>())?;

    let d_img: Vec<Matrix> = [0, 2, 3, 7, 10, 4, 14, 9, 16]
        .iter()
        .map(|&i| d.matmul(&blocks[i]))
        .collect::<Result<_>>()?;
    let t_inv = with_complement(ring, d.rows(), &d_img.iter().collect::<Vec<_>>())?;

    let invert = |name: &str, m: &Matrix| m.invert().map_err(|e| failure(name, format!("{e}")));
    let cert = DecompositionCertificate {
        m: invert("M", &m_inv)?,
        p: p_mat,
        q: q_mat,
        s: invert("S", &s_inv)?,
        t: invert("T", &t_inv)?,
        targets,
    };
    cert.verify(a, b, c, d)?;
    Ok(cert)
}

/// `[parts | X]` where `X` completes the span of `parts` to `F^n`.
fn with_complement(ring: Ring, n: usize, parts: &[&Matrix]) -> Result<Matrix> {
    let used = Matrix::hstack_sized(ring, n, parts)?;
    let fill = Subspace::span(&used).complement();
    Matrix::hstack(&[&used, &fill])
}

/// Decomposes `(E*, H*, F*, G*)` as a quaternity and conjugate-transposes
/// the transforms.
pub fn decompose_dual(e: &Matrix, f: &Matrix, g: &Matrix, h: &Matrix) -> Result<DualCertificate> {
    check_dual_shapes(e, f, g, h)?;
    let inv = dual_invariants(e, f, g, h)?;
    let targets = build_canonical_dual(e.ring(), &inv)?;
    let base = decompose_quaternity(
        &e.conjugate_transpose(),
        &h.conjugate_transpose(),
        &f.conjugate_transpose(),
        &g.conjugate_transpose(),
    )?;
    let cert = DualCertificate {
        p1: base.p.conjugate_transpose(),
        m1: base.m.conjugate_transpose(),
        q1: base.q.conjugate_transpose(),
        s1: base.s.conjugate_transpose(),
        t1: base.t.conjugate_transpose(),
        targets,
    };
    cert.verify(e, f, g, h)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quaternity(r: Ring, rows: [&[&[i64]]; 4]) -> [Matrix; 4] {
        rows.map(|m| Matrix::from_i64(r, m))
    }

    #[test]
    fn zero_quaternity_gives_identities() {
        let r = Ring::Rationals;
        let z = |a, b| Matrix::zeros(r, a, b);
        let cert = decompose_quaternity(&z(2, 3), &z(2, 2), &z(1, 3), &z(2, 3)).unwrap();
        for m in [&cert.m, &cert.p, &cert.q, &cert.s, &cert.t] {
            assert!(m.is_identity());
        }
    }

    #[test]
    fn identity_a() {
        let r = Ring::PrimeField(5);
        let a = Matrix::identity(r, 3);
        let (b, c, d) = (Matrix::zeros(r, 3, 1), Matrix::zeros(r, 2, 3), Matrix::zeros(r, 1, 3));
        let cert = decompose_quaternity(&a, &b, &c, &d).unwrap();
        cert.verify(&a, &b, &c, &d).unwrap();
        assert!(cert.targets.s_a.is_identity());
    }

    #[test]
    fn coupled_example() {
        let r = Ring::Rationals;
        let [a, b, c, d] = quaternity(
            r,
            [
                &[&[1, 2, 0, 1], &[0, 1, 1, 0], &[1, 3, 1, 1]],
                &[&[1, 0], &[0, 1], &[1, 1]],
                &[&[0, 1, 1, 0], &[1, 0, 0, 1]],
                &[&[1, 1, 0, 0], &[0, 0, 1, 1], &[1, 1, 1, 1]],
            ],
        );
        let cert = decompose_quaternity(&a, &b, &c, &d).unwrap();
        cert.verify(&a, &b, &c, &d).unwrap();
    }

    #[test]
    fn dual_identity_e() {
        let r = Ring::Rationals;
        let e = Matrix::identity(r, 2);
        let (f, g, h) = (Matrix::zeros(r, 2, 1), Matrix::zeros(r, 2, 2), Matrix::zeros(r, 1, 2));
        let cert = decompose_dual(&e, &f, &g, &h).unwrap();
        cert.verify(&e, &f, &g, &h).unwrap();
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let r = Ring::Rationals;
        let a = Matrix::from_i64(r, &[&[1, 1], &[0, 0]]);
        let (b, c, d) = (Matrix::zeros(r, 2, 1), Matrix::zeros(r, 1, 2), Matrix::zeros(r, 1, 2));
        let mut cert = decompose_quaternity(&a, &b, &c, &d).unwrap();
        cert.m = Matrix::from_i64(r, &[&[2, 0], &[0, 1]]).matmul(&cert.m).unwrap();
        assert!(matches!(
            cert.verify(&a, &b, &c, &d),
            Err(Error::DecompositionFailure { .. })
        ));
    }
}

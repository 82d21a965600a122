use std::ops::Range;

use serde::Serialize;

use super::invariants::{DualInvariants, QuaternityInvariants};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Ring;

/// The 0/1 targets `S_a, S_b, S_c, S_d` with their block partitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalQuaternity {
    pub s_a: Matrix,
    pub s_b: Matrix,
    pub s_c: Matrix,
    pub s_d: Matrix,
    /// Eighteen column blocks of `P`, shared by `S_a`, `S_c` and `S_d`.
    pub column_partition_p: Vec<usize>,
    pub sa_rows: Vec<usize>,
    /// `(r1, r2, p - r1 - r2)`, a coarsening of `column_partition_p`.
    pub sa_cols: Vec<usize>,
    pub sc_rows: Vec<usize>,
    pub sd_rows: Vec<usize>,
}

/// The 0/1 targets `S_e, S_f, S_g, S_h` with their block partitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalDual {
    pub s_e: Matrix,
    pub s_f: Matrix,
    pub s_g: Matrix,
    pub s_h: Matrix,
    pub se_rows: Vec<usize>,
    pub se_cols: Vec<usize>,
    pub sf_rows: Vec<usize>,
    pub sf_cols: Vec<usize>,
    pub sg_rows: Vec<usize>,
    pub sg_cols: Vec<usize>,
}

/// A zero matrix partitioned by `rows` x `cols` with an identity on each
/// listed (row-block range, column-block range) rectangle.
fn layout(ring: Ring, rows: &[usize], cols: &[usize], ids: &[(Range<usize>, Range<usize>)]) -> Result<Matrix> {
    let start = |sizes: &[usize], k: usize| sizes[..k].iter().sum::<usize>();
    let mut out = Matrix::zeros(ring, rows.iter().sum(), cols.iter().sum());
    for (rr, cr) in ids {
        let (r0, c0) = (start(rows, rr.start), start(cols, cr.start));
        let h = start(rows, rr.end) - r0;
        let w = start(cols, cr.end) - c0;
        if h != w {
            return Err(Error::internal(format!(
                "identity on row blocks {rr:?} x column blocks {cr:?} would be {h}x{w}"
            )));
        }
        for k in 0..h {
            out.set(r0 + k, c0 + k, ring.one());
        }
    }
    Ok(out)
}

fn one(k: usize) -> Range<usize> {
    k..k + 1
}

fn check_sum(what: &str, parts: &[usize], total: usize) -> Result<()> {
    let sum: usize = parts.iter().sum();
    if sum != total {
        return Err(Error::internal(format!(
            "{what} partition sums to {sum}, expected {total}"
        )));
    }
    Ok(())
}

pub fn build_canonical_quaternity(ring: Ring, inv: &QuaternityInvariants) -> Result<CanonicalQuaternity> {
    for (name, w) in inv.widths() {
        if w < 0 {
            return Err(Error::internal(format!("{name} = {w} is negative")));
        }
    }
    let pb = inv.p_blocks();
    let sa_rows = inv.sa_rows();
    let sc_rows = inv.sc_rows();
    let sd_rows = inv.sd_rows();
    check_sum("P column", &pb, inv.p())?;
    check_sum("S_a row", &sa_rows, inv.m())?;
    check_sum("S_c row", &sc_rows, inv.s())?;
    check_sum("S_d row", &sd_rows, inv.t())?;

    let s_a = layout(ring, &sa_rows, &pb, &[(one(0), 6..12), (one(2), 0..6)])?;
    let s_b = layout(ring, &sa_rows, &[inv.rank_b, inv.q() - inv.rank_b], &[(0..2, one(0))])?;
    let s_c = layout(ring, &sc_rows, &pb, &[(one(0), 0..2), (one(1), 6..9), (one(2), 12..16)])?;
    let sd_ids: Vec<(Range<usize>, Range<usize>)> = [
        (0, 0),
        (1, 2),
        (2, 3),
        (2, 6),
        (3, 7),
        (4, 10),
        (4, 12),
        (5, 4),
        (5, 13),
        (6, 14),
        (7, 9),
        (8, 16),
    ]
    .iter()
    .map(|&(r, c)| (one(r), one(c)))
    .collect();
    let s_d = layout(ring, &sd_rows, &pb, &sd_ids)?;
    Ok(CanonicalQuaternity {
        s_a,
        s_b,
        s_c,
        s_d,
        column_partition_p: pb.to_vec(),
        sa_rows: sa_rows.to_vec(),
        sa_cols: vec![inv.r1, inv.r2, inv.p() - inv.r1 - inv.r2],
        sc_rows: sc_rows.to_vec(),
        sd_rows: sd_rows.to_vec(),
    })
}

pub fn build_canonical_dual(ring: Ring, inv: &DualInvariants) -> Result<CanonicalDual> {
    for (name, w) in inv.widths() {
        if w < 0 {
            return Err(Error::internal(format!("{name} = {w} is negative")));
        }
    }
    let se_rows = vec![inv.v2, inv.v1, inv.p1() - inv.v1 - inv.v2];
    let se_cols = vec![inv.v1, inv.v3, inv.v2, inv.m1() - inv.v1 - inv.v2 - inv.v3];
    let f_used = inv.v4 + inv.v5 + inv.v6 + inv.v7 + inv.v8;
    let sf_rows = vec![inv.v4, inv.v5, inv.v6, inv.v7, inv.v8, inv.p1() - f_used];
    let sf_cols = vec![inv.v4, inv.v6, inv.v8, inv.s1() - inv.v4 - inv.v6 - inv.v8];
    let sg_rows = inv.sg_rows();
    let sg_cols = inv.sg_cols();
    check_sum("S_g row", &sg_rows, inv.p1())?;
    check_sum("S_g column", &sg_cols, inv.t1())?;
    check_sum("S_f row", &sf_rows, inv.p1())?;

    let s_e = layout(ring, &se_rows, &se_cols, &[(one(0), one(2)), (one(1), one(0))])?;
    let s_f = layout(
        ring,
        &sf_rows,
        &sf_cols,
        &[(one(0), one(0)), (one(2), one(1)), (one(4), one(2))],
    )?;
    let sg_ids: Vec<(Range<usize>, Range<usize>)> = [
        (0, 0),
        (2, 1),
        (3, 2),
        (6, 2),
        (7, 3),
        (10, 4),
        (12, 4),
        (4, 5),
        (13, 5),
        (14, 6),
        (9, 7),
        (16, 8),
    ]
    .iter()
    .map(|&(r, c)| (one(r), one(c)))
    .collect();
    let s_g = layout(ring, &sg_rows, &sg_cols, &sg_ids)?;
    let s_h = layout(
        ring,
        &[inv.rank_h, inv.q1() - inv.rank_h],
        &[inv.rank_h, inv.m1() - inv.rank_h],
        &[(one(0), one(0))],
    )?;
    Ok(CanonicalDual {
        s_e,
        s_f,
        s_g,
        s_h,
        se_rows,
        se_cols,
        sf_rows,
        sf_cols,
        sg_rows: sg_rows.to_vec(),
        sg_cols: sg_cols.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::invariants::{dual_invariants, quaternity_invariants};

    #[test]
    fn zero_invariants_give_zero_forms() {
        let r = Ring::Rationals;
        let z = |a, b| Matrix::zeros(r, a, b);
        let inv = quaternity_invariants(&z(2, 3), &z(2, 1), &z(1, 3), &z(1, 3)).unwrap();
        let c = build_canonical_quaternity(r, &inv).unwrap();
        assert_eq!((c.s_a.clone(), c.s_b.clone()), (z(2, 3), z(2, 1)));
        assert_eq!((c.s_c.clone(), c.s_d.clone()), (z(1, 3), z(1, 3)));
        let dual = dual_invariants(&z(2, 3), &z(2, 1), &z(2, 1), &z(1, 3)).unwrap();
        let d = build_canonical_dual(r, &dual).unwrap();
        assert!(d.s_e.is_zero() && d.s_f.is_zero() && d.s_g.is_zero() && d.s_h.is_zero());
    }

    #[test]
    fn identity_a_form() {
        let r = Ring::Rationals;
        let inv = quaternity_invariants(
            &Matrix::identity(r, 3),
            &Matrix::zeros(r, 3, 2),
            &Matrix::zeros(r, 1, 3),
            &Matrix::zeros(r, 1, 3),
        )
        .unwrap();
        let c = build_canonical_quaternity(r, &inv).unwrap();
        assert!(c.s_a.is_identity());
        assert!(c.s_b.is_zero() && c.s_c.is_zero() && c.s_d.is_zero());
        assert_eq!(c.sa_cols, vec![3, 0, 0]);
    }

    #[test]
    fn dual_identity_e() {
        let r = Ring::PrimeField(3);
        let z = |a, b| Matrix::zeros(r, a, b);
        let inv = dual_invariants(&Matrix::identity(r, 2), &z(2, 1), &z(2, 2), &z(1, 2)).unwrap();
        let d = build_canonical_dual(r, &inv).unwrap();
        assert!(d.s_e.is_identity());
        assert_eq!(d.se_rows, vec![2, 0, 0]);
    }

    #[test]
    fn canonical_forms_reproduce_their_invariants() {
        let r = Ring::PrimeField(7);
        let mut inv = QuaternityInvariants {
            r1: 4,
            r2: 5,
            r3: 4,
            r4: 2,
            r5: 2,
            r6: 1,
            r7: 3,
            r8: 1,
            r9: 1,
            r10: 1,
            r11: 1,
            r12: 1,
            r13: 0,
            r14: 1,
            r_theta: 0,
            r_pi: 0,
            rank_b: 5,
            dims: [9, 14, 5, 9, 10],
        };
        inv.r_theta = inv.r1 - inv.r5 - inv.r10 - inv.r13 - inv.r14;
        inv.r_pi = inv.r2 - inv.r4 - inv.r8 - inv.r12;
        let c = build_canonical_quaternity(r, &inv).unwrap();
        let back = quaternity_invariants(&c.s_a, &c.s_b, &c.s_c, &c.s_d).unwrap();
        assert_eq!(back, inv);
    }

    #[test]
    fn bad_partition_is_reported() {
        let r = Ring::Rationals;
        let mut inv = quaternity_invariants(
            &Matrix::identity(r, 2),
            &Matrix::zeros(r, 2, 1),
            &Matrix::zeros(r, 1, 2),
            &Matrix::zeros(r, 1, 2),
        )
        .unwrap();
        inv.r2 = 5;
        assert!(matches!(
            build_canonical_quaternity(r, &inv),
            Err(Error::InternalInconsistency(_))
        ));
    }
}

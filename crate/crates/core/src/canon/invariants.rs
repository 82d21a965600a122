use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::recipe::{recipe, Bindings, RankTable, Recipe};

/// Block-size invariants of a quaternity `(A, B, C, D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuaternityInvariants {
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
    pub r4: usize,
    pub r5: usize,
    pub r6: usize,
    pub r7: usize,
    pub r8: usize,
    pub r9: usize,
    pub r10: usize,
    pub r11: usize,
    pub r12: usize,
    pub r13: usize,
    pub r14: usize,
    pub r_theta: usize,
    pub r_pi: usize,
    pub rank_b: usize,
    /// `(m, p, q, s, t)`.
    pub dims: [usize; 5],
}

/// Block-size invariants of a dual array `(E, F, G, H)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualInvariants {
    pub v1: usize,
    pub v2: usize,
    pub v3: usize,
    pub v4: usize,
    pub v5: usize,
    pub v6: usize,
    pub v7: usize,
    pub v8: usize,
    pub v9: usize,
    pub v10: usize,
    pub v11: usize,
    pub v12: usize,
    pub v13: usize,
    pub v14: usize,
    pub v15: usize,
    pub v16: usize,
    pub v17: usize,
    pub rank_h: usize,
    /// `(p1, m1, q1, s1, t1)`.
    pub dims: [usize; 5],
}

/// One identity from [`verify_consistency`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub identities: Vec<IdentityCheck>,
    pub passed: bool,
}

pub(crate) struct QuaternityRecipes {
    a: Recipe,
    b: Recipe,
    c: Recipe,
    d: Recipe,
    ab: Recipe,
    ac: Recipe,
    ad: Recipe,
    acd: Recipe,
    cd: Recipe,
    abc: Recipe,
    abd: Recipe,
    abcd: Recipe,
    x1: Recipe,
    x2: Recipe,
    x3: Recipe,
}

impl QuaternityRecipes {
    pub(crate) fn new() -> Self {
        QuaternityRecipes {
            a: recipe("[A]"),
            b: recipe("[B]"),
            c: recipe("[C]"),
            d: recipe("[D]"),
            ab: recipe("[A B]"),
            ac: recipe("[A; C]"),
            ad: recipe("[A; D]"),
            acd: recipe("[A; C; D]"),
            cd: recipe("[C; D]"),
            abc: recipe("[A B; C 0]"),
            abd: recipe("[A B; D 0]"),
            abcd: recipe("[A B; C 0; D 0]"),
            x1: recipe("[A A; C 0; 0 D]"),
            x2: recipe("[A A B; C 0 0; 0 D 0]"),
            x3: recipe("[0 A B; A A 0; C 0 0; 0 D 0]"),
        }
    }

    fn all(&self) -> [&Recipe; 15] {
        [
            &self.a, &self.b, &self.c, &self.d, &self.ab, &self.ac, &self.ad, &self.acd, &self.cd, &self.abc,
            &self.abd, &self.abcd, &self.x1, &self.x2, &self.x3,
        ]
    }
}

/// The fifteen distinct block ranks the quaternity invariants are built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuaternityRanks {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub ab: i64,
    pub ac: i64,
    pub ad: i64,
    pub acd: i64,
    pub cd: i64,
    pub abc: i64,
    pub abd: i64,
    pub abcd: i64,
    pub x1: i64,
    pub x2: i64,
    pub x3: i64,
}

impl QuaternityRanks {
    pub fn compute(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Self> {
        check_quaternity_shapes(a, b, c, d)?;
        let env = bindings(&[("A", a), ("B", b), ("C", c), ("D", d)]);
        let rec = QuaternityRecipes::new();
        let t = RankTable::compute(&env, rec.all())?;
        let g = |r: &Recipe| t.get(r) as i64;
        Ok(QuaternityRanks {
            a: g(&rec.a),
            b: g(&rec.b),
            c: g(&rec.c),
            d: g(&rec.d),
            ab: g(&rec.ab),
            ac: g(&rec.ac),
            ad: g(&rec.ad),
            acd: g(&rec.acd),
            cd: g(&rec.cd),
            abc: g(&rec.abc),
            abd: g(&rec.abd),
            abcd: g(&rec.abcd),
            x1: g(&rec.x1),
            x2: g(&rec.x2),
            x3: g(&rec.x3),
        })
    }

    /// `[r1, ..., r14, r_theta, r_pi]` as signed values.
    pub fn r_values(&self) -> [i64; 16] {
        let k = self;
        let r1 = k.ab - k.b;
        let r2 = k.a + k.b - k.ab;
        let r3 = k.ac - k.a;
        let r4 = k.abc + k.a - k.ab - k.ac;
        let r5 = k.c + k.ab - k.abc;
        let r6 = k.acd - k.ac;
        let r7 = k.ad + k.ac - k.a - k.acd;
        let r8 = -k.ad - k.abc + k.x3;
        let r9 = k.abc + k.abd - k.x3 + k.a - k.ab;
        let r10 = -k.c - k.abd + k.x2;
        let r11 = k.c + k.d + k.ab - k.x2;
        let r12 = k.ac + k.ad - k.acd + k.abcd - k.x3;
        let r13 = k.abc + k.abd + k.x1 - k.x2 - k.x3;
        let r14 = k.cd - k.abcd - k.x1 + k.x3;
        let r_theta = r1 - r5 - r10 - r13 - r14;
        let r_pi = r2 - r4 - r8 - r12;
        [
            r1, r2, r3, r4, r5, r6, r7, r8, r9, r10, r11, r12, r13, r14, r_theta, r_pi,
        ]
    }
}

pub(crate) fn bindings(pairs: &[(&str, &Matrix)]) -> Bindings {
    pairs.iter().map(|(k, m)| (k.to_string(), (*m).clone())).collect()
}

pub(crate) fn check_quaternity_shapes(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<()> {
    let ring = a.ring();
    for m in [b, c, d] {
        if m.ring() != ring {
            return Err(Error::RingMismatch {
                expected: ring,
                found: m.ring(),
            });
        }
    }
    if b.rows() != a.rows() {
        return Err(Error::shape(format!("B has {} rows, A has {}", b.rows(), a.rows())));
    }
    for (name, m) in [("C", c), ("D", d)] {
        if m.cols() != a.cols() {
            return Err(Error::shape(format!(
                "{name} has {} columns, A has {}",
                m.cols(),
                a.cols()
            )));
        }
    }
    Ok(())
}

fn nonneg(name: &str, v: i64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::internal(format!("{name} = {v} is negative")))
}

pub fn quaternity_invariants(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<QuaternityInvariants> {
    let ranks = QuaternityRanks::compute(a, b, c, d)?;
    let dims = [a.rows(), a.cols(), b.cols(), c.rows(), d.rows()];
    QuaternityInvariants::from_ranks(&ranks, dims)
}

impl QuaternityInvariants {
    pub fn from_ranks(ranks: &QuaternityRanks, dims: [usize; 5]) -> Result<Self> {
        let v = ranks.r_values();
        let names = [
            "r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9", "r10", "r11", "r12", "r13", "r14", "r_theta", "r_pi",
        ];
        let mut u = [0usize; 16];
        for i in 0..16 {
            u[i] = nonneg(names[i], v[i])?;
        }
        let inv = QuaternityInvariants {
            r1: u[0],
            r2: u[1],
            r3: u[2],
            r4: u[3],
            r5: u[4],
            r6: u[5],
            r7: u[6],
            r8: u[7],
            r9: u[8],
            r10: u[9],
            r11: u[10],
            r12: u[11],
            r13: u[12],
            r14: u[13],
            r_theta: u[14],
            r_pi: u[15],
            rank_b: nonneg("rank_b", ranks.b)?,
            dims,
        };
        for (name, w) in inv.widths() {
            nonneg(name, w)?;
        }
        Ok(inv)
    }

    pub fn m(&self) -> usize {
        self.dims[0]
    }
    pub fn p(&self) -> usize {
        self.dims[1]
    }
    pub fn q(&self) -> usize {
        self.dims[2]
    }
    pub fn s(&self) -> usize {
        self.dims[3]
    }
    pub fn t(&self) -> usize {
        self.dims[4]
    }

    /// The seventeen stored rank-derived values, in field order.
    pub fn values(&self) -> [usize; 17] {
        [
            self.r1,
            self.r2,
            self.r3,
            self.r4,
            self.r5,
            self.r6,
            self.r7,
            self.r8,
            self.r9,
            self.r10,
            self.r11,
            self.r12,
            self.r13,
            self.r14,
            self.r_theta,
            self.r_pi,
            self.rank_b,
        ]
    }

    /// Every derived block width, signed.
    pub fn widths(&self) -> Vec<(&'static str, i64)> {
        let r = |v: usize| v as i64;
        let (m, p, q, s, t) = (r(self.m()), r(self.p()), r(self.q()), r(self.s()), r(self.t()));
        vec![
            ("r1-r5", r(self.r1) - r(self.r5)),
            ("r2-r4", r(self.r2) - r(self.r4)),
            ("r9-r13", r(self.r9) - r(self.r13)),
            ("r4-r9", r(self.r4) - r(self.r9)),
            ("r7-r12-r14", r(self.r7) - r(self.r12) - r(self.r14)),
            ("r3-r7", r(self.r3) - r(self.r7)),
            ("r5-r11", r(self.r5) - r(self.r11)),
            ("rank_b-r2", r(self.rank_b) - r(self.r2)),
            ("m-rank_b-r1", m - r(self.rank_b) - r(self.r1)),
            ("q-rank_b", q - r(self.rank_b)),
            ("p-r1-r2-r3-r6", p - r(self.r1) - r(self.r2) - r(self.r3) - r(self.r6)),
            ("s-r3-r4-r5", s - r(self.r3) - r(self.r4) - r(self.r5)),
            (
                "t-r6-r7-r8-r9-r10-r11",
                t - r(self.r6) - r(self.r7) - r(self.r8) - r(self.r9) - r(self.r10) - r(self.r11),
            ),
        ]
    }

    /// Widths of the eighteen column blocks shared by all four canonical forms.
    pub fn p_blocks(&self) -> [usize; 18] {
        let s = self;
        let head = [
            s.r11,
            s.r5 - s.r11,
            s.r10,
            s.r13,
            s.r14,
            s.r_theta,
            s.r13,
            s.r9 - s.r13,
            s.r4 - s.r9,
            s.r8,
            s.r12,
            s.r_pi,
            s.r12,
            s.r14,
            s.r7 - s.r12 - s.r14,
            s.r3 - s.r7,
            s.r6,
        ];
        let used: usize = head.iter().sum();
        let mut out = [0; 18];
        out[..17].copy_from_slice(&head);
        out[17] = s.p() - used;
        out
    }

    pub fn sa_rows(&self) -> [usize; 4] {
        [
            self.r2,
            self.rank_b - self.r2,
            self.r1,
            self.m() - self.rank_b - self.r1,
        ]
    }

    pub fn sc_rows(&self) -> [usize; 4] {
        [self.r5, self.r4, self.r3, self.s() - self.r3 - self.r4 - self.r5]
    }

    pub fn sd_rows(&self) -> [usize; 10] {
        let s = self;
        let used = s.r6 + s.r7 + s.r8 + s.r9 + s.r10 + s.r11;
        [
            s.r11,
            s.r10,
            s.r13,
            s.r9 - s.r13,
            s.r12,
            s.r14,
            s.r7 - s.r12 - s.r14,
            s.r8,
            s.r6,
            s.t() - used,
        ]
    }
}

pub(crate) struct DualRecipes {
    e: Recipe,
    f: Recipe,
    g: Recipe,
    h: Recipe,
    eh: Recipe,
    ef: Recipe,
    eg: Recipe,
    fg: Recipe,
    efg: Recipe,
    ef_h: Recipe,
    eg_h: Recipe,
    efg_h: Recipe,
    y1: Recipe,
    y2: Recipe,
    y3: Recipe,
}

impl DualRecipes {
    fn new() -> Self {
        DualRecipes {
            e: recipe("[E]"),
            f: recipe("[F]"),
            g: recipe("[G]"),
            h: recipe("[H]"),
            eh: recipe("[E; H]"),
            ef: recipe("[E F]"),
            eg: recipe("[E G]"),
            fg: recipe("[F G]"),
            efg: recipe("[E F G]"),
            ef_h: recipe("[E F; H 0]"),
            eg_h: recipe("[E G; H 0]"),
            efg_h: recipe("[E F G; H 0 0]"),
            y1: recipe("[E F 0; E 0 G]"),
            y2: recipe("[E F 0; E 0 G; H 0 0]"),
            y3: recipe("[0 E F 0; E E 0 G; H 0 0 0]"),
        }
    }

    fn all(&self) -> [&Recipe; 15] {
        [
            &self.e,
            &self.f,
            &self.g,
            &self.h,
            &self.eh,
            &self.ef,
            &self.eg,
            &self.fg,
            &self.efg,
            &self.ef_h,
            &self.eg_h,
            &self.efg_h,
            &self.y1,
            &self.y2,
            &self.y3,
        ]
    }
}

pub(crate) fn check_dual_shapes(e: &Matrix, f: &Matrix, g: &Matrix, h: &Matrix) -> Result<()> {
    for m in [f, g, h] {
        if m.ring() != e.ring() {
            return Err(Error::RingMismatch {
                expected: e.ring(),
                found: m.ring(),
            });
        }
    }
    for (name, m) in [("F", f), ("G", g)] {
        if m.rows() != e.rows() {
            return Err(Error::shape(format!(
                "{name} has {} rows, E has {}",
                m.rows(),
                e.rows()
            )));
        }
    }
    if h.cols() != e.cols() {
        return Err(Error::shape(format!("H has {} columns, E has {}", h.cols(), e.cols())));
    }
    Ok(())
}

pub fn dual_invariants(e: &Matrix, f: &Matrix, g: &Matrix, h: &Matrix) -> Result<DualInvariants> {
    check_dual_shapes(e, f, g, h)?;
    let env = bindings(&[("E", e), ("F", f), ("G", g), ("H", h)]);
    let rec = DualRecipes::new();
    let t = RankTable::compute(&env, rec.all())?;
    let k = |r: &Recipe| t.get(r) as i64;
    let (re, rf, rg, rh) = (k(&rec.e), k(&rec.f), k(&rec.g), k(&rec.h));
    let (eh, ef, eg, fg, efg) = (k(&rec.eh), k(&rec.ef), k(&rec.eg), k(&rec.fg), k(&rec.efg));
    let (ef_h, eg_h, efg_h) = (k(&rec.ef_h), k(&rec.eg_h), k(&rec.efg_h));
    let (y1, y2, y3) = (k(&rec.y1), k(&rec.y2), k(&rec.y3));
    let v = [
        re + rh - eh,
        eh - rh,
        eh - re,
        rf + eh - ef_h,
        ef_h - rf - rh,
        ef_h + re - eh - ef,
        ef + rh - ef_h,
        ef - re,
        rf + rg + eh - y2,
        -rf - eg_h + y2,
        ef_h + eg_h + y1 - y2 - y3,
        fg - efg_h - y1 + y3,
        re - eh - y1 + y2,
        -eg - ef_h + y3,
        ef + eg - efg + efg_h - y3,
        -re - fg + y1,
        efg - ef,
    ];
    let mut u = [0usize; 17];
    for i in 0..17 {
        u[i] = nonneg(&format!("v{}", i + 1), v[i])?;
    }
    let inv = DualInvariants {
        v1: u[0],
        v2: u[1],
        v3: u[2],
        v4: u[3],
        v5: u[4],
        v6: u[5],
        v7: u[6],
        v8: u[7],
        v9: u[8],
        v10: u[9],
        v11: u[10],
        v12: u[11],
        v13: u[12],
        v14: u[13],
        v15: u[14],
        v16: u[15],
        v17: u[16],
        rank_h: rh as usize,
        dims: [e.rows(), e.cols(), h.rows(), f.cols(), g.cols()],
    };
    for (name, w) in inv.widths() {
        nonneg(name, w)?;
    }
    Ok(inv)
}

impl DualInvariants {
    pub fn p1(&self) -> usize {
        self.dims[0]
    }
    pub fn m1(&self) -> usize {
        self.dims[1]
    }
    pub fn q1(&self) -> usize {
        self.dims[2]
    }
    pub fn s1(&self) -> usize {
        self.dims[3]
    }
    pub fn t1(&self) -> usize {
        self.dims[4]
    }

    pub fn values(&self) -> [usize; 18] {
        [
            self.v1,
            self.v2,
            self.v3,
            self.v4,
            self.v5,
            self.v6,
            self.v7,
            self.v8,
            self.v9,
            self.v10,
            self.v11,
            self.v12,
            self.v13,
            self.v14,
            self.v15,
            self.v16,
            self.v17,
            self.rank_h,
        ]
    }

    pub fn widths(&self) -> Vec<(&'static str, i64)> {
        let v = |x: usize| x as i64;
        let (p1, m1, q1, s1, t1) = (v(self.p1()), v(self.m1()), v(self.q1()), v(self.s1()), v(self.t1()));
        let f_rows = v(self.v4) + v(self.v5) + v(self.v6) + v(self.v7) + v(self.v8);
        let g_cols = [
            self.v9, self.v10, self.v11, self.v13, self.v15, self.v12, self.v16, self.v14, self.v17,
        ]
        .iter()
        .map(|&x| v(x))
        .sum::<i64>();
        vec![
            ("v4-v9", v(self.v4) - v(self.v9)),
            ("v5-v10-v11-v12", v(self.v5) - v(self.v10) - v(self.v11) - v(self.v12)),
            ("v6-v11-v13", v(self.v6) - v(self.v11) - v(self.v13)),
            ("v7-v14-v15", v(self.v7) - v(self.v14) - v(self.v15)),
            ("v8-v15-v12-v16", v(self.v8) - v(self.v15) - v(self.v12) - v(self.v16)),
            ("p1-v1-v2", p1 - v(self.v1) - v(self.v2)),
            ("m1-v1-v2-v3", m1 - v(self.v1) - v(self.v2) - v(self.v3)),
            ("p1-v4-...-v8-v17", p1 - f_rows - v(self.v17)),
            ("s1-v4-v6-v8", s1 - v(self.v4) - v(self.v6) - v(self.v8)),
            ("t1-S_g columns", t1 - g_cols),
            ("q1-rank_h", q1 - v(self.rank_h)),
            ("m1-rank_h", m1 - v(self.rank_h)),
        ]
    }

    /// Row partition of `S_g` (eighteen blocks, shared by `S_e`, `S_f`).
    pub fn sg_rows(&self) -> [usize; 18] {
        let s = self;
        let head = [
            s.v9,
            s.v4 - s.v9,
            s.v10,
            s.v11,
            s.v12,
            s.v5 - s.v10 - s.v11 - s.v12,
            s.v11,
            s.v13,
            s.v6 - s.v11 - s.v13,
            s.v14,
            s.v15,
            s.v7 - s.v14 - s.v15,
            s.v15,
            s.v12,
            s.v16,
            s.v8 - s.v15 - s.v12 - s.v16,
            s.v17,
        ];
        let mut out = [0; 18];
        out[..17].copy_from_slice(&head);
        out[17] = s.p1() - head.iter().sum::<usize>();
        out
    }

    pub fn sg_cols(&self) -> [usize; 10] {
        let s = self;
        let head = [s.v9, s.v10, s.v11, s.v13, s.v15, s.v12, s.v16, s.v14, s.v17];
        let mut out = [0; 10];
        out[..9].copy_from_slice(&head);
        out[9] = s.t1() - head.iter().sum::<usize>();
        out
    }
}

/// Dual invariants of `(A*, C*, D*, B*)`.
pub fn duality_transport(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<DualInvariants> {
    check_quaternity_shapes(a, b, c, d)?;
    dual_invariants(
        &a.conjugate_transpose(),
        &c.conjugate_transpose(),
        &d.conjugate_transpose(),
        &b.conjugate_transpose(),
    )
}

/// Re-ranks every block matrix from scratch and checks the relation and
/// auxiliary identities against `inv`.
pub fn verify_consistency(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    d: &Matrix,
    inv: &QuaternityInvariants,
) -> Result<ConsistencyReport> {
    let k = QuaternityRanks::compute(a, b, c, d)?;
    let r = |v: usize| v as i64;
    let (r2, r3, r4, r5, r6, r7) = (r(inv.r2), r(inv.r3), r(inv.r4), r(inv.r5), r(inv.r6), r(inv.r7));
    let (r8, r9, r10, r11, r12, r13, r14) = (
        r(inv.r8),
        r(inv.r9),
        r(inv.r10),
        r(inv.r11),
        r(inv.r12),
        r(inv.r13),
        r(inv.r14),
    );
    let (rt, rp, rb) = (r(inv.r_theta), r(inv.r_pi), r(inv.rank_b));
    let rows: [(&str, i64, i64); 8] = [
        (
            "r8+r9 = r(A B; D 0) + r(A) - r(A B) - r(A; D)",
            r8 + r9,
            k.abd + k.a - k.ab - k.ad,
        ),
        (
            "r8+r12 = r(A B; C 0; D 0) + r(A; C) - r(A B; C 0) - r(A; C; D)",
            r8 + r12,
            k.abcd + k.ac - k.abc - k.acd,
        ),
        ("r10+r11 = r(A B) + r(D) - r(A B; D 0)", r10 + r11, k.ab + k.d - k.abd),
        (
            "r10+r13+r14 = r(C; D) + r(A B; C 0) - r(C) - r(A B; C 0; D 0)",
            r10 + r13 + r14,
            k.cd + k.abc - k.c - k.abcd,
        ),
        ("r(D) = r6+r7+r8+r9+r10+r11", k.d, r6 + r7 + r8 + r9 + r10 + r11),
        (
            "r(A A; C 0; 0 D)",
            k.x1,
            r3 + 2 * r4 + 2 * r5 + r6 + r7 + 2 * r8 + 2 * r10 + r12 + 2 * r13 + r14 + rp + rt,
        ),
        (
            "r(A A B; C 0 0; 0 D 0)",
            k.x2,
            rb - r2 + r3 + 2 * r4 + 2 * r5 + r6 + r7 + 2 * r8 + r9 + 2 * r10 + r12 + r13 + r14 + rp + rt,
        ),
        (
            "r(0 A B; A A 0; C 0 0; 0 D 0)",
            k.x3,
            rb - r2 + r3 + 3 * r4 + 2 * r5 + r6 + r7 + 3 * r8 + 2 * r10 + 2 * r12 + 2 * r13 + 2 * r14 + 2 * rp + 2 * rt,
        ),
    ];
    let identities: Vec<IdentityCheck> = rows
        .iter()
        .map(|&(name, lhs, rhs)| IdentityCheck {
            name: name.to_string(),
            lhs,
            rhs,
            holds: lhs == rhs,
        })
        .collect();
    let passed = identities.iter().all(|i| i.holds);
    Ok(ConsistencyReport { identities, passed })
}

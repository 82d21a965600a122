//! Reference computations written without the library's elimination,
//! block assembly or quaternion arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quaternity::canon::{dual_invariants, quaternity_invariants, verify_consistency, QuaternityInvariants};
use quaternity::harness::{gen_dual_array, gen_matrix, gen_quaternity, gen_structured, DimBounds};
use quaternity::matrix::Matrix;
use quaternity::scalar::{Element, Ring};

trait Field: Clone {
    fn is_zero(&self) -> bool;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
}

#[derive(Clone, Debug)]
struct Fp(u64, u64);

impl Field for Fp {
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + self.1 - o.0) % self.1, self.1)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % self.1, self.1)
    }
    fn div(&self, o: &Self) -> Self {
        // Fermat
        let (mut base, mut e, mut acc) = (o.0, self.1 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.1;
            }
            base = base * base % self.1;
            e >>= 1;
        }
        self.mul(&Fp(acc, self.1))
    }
}

impl Field for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

type Dense<F> = Vec<Vec<F>>;

/// Column elimination: clear each pivot row to the right of its pivot.
fn rank<F: Field>(m: &Dense<F>) -> usize {
    let mut cols: Vec<Vec<F>> = if m.is_empty() {
        Vec::new()
    } else {
        (0..m[0].len())
            .map(|j| m.iter().map(|row| row[j].clone()).collect())
            .collect()
    };
    let rows = m.len();
    let mut rank = 0;
    for i in 0..rows {
        let Some(p) = (rank..cols.len()).find(|&j| !cols[j][i].is_zero()) else {
            continue;
        };
        cols.swap(rank, p);
        let pivot = cols[rank].clone();
        for col in cols.iter_mut().skip(rank + 1) {
            if col[i].is_zero() {
                continue;
            }
            let f = col[i].div(&pivot[i]);
            for (x, p) in col.iter_mut().zip(&pivot) {
                *x = x.sub(&p.mul(&f));
            }
        }
        rank += 1;
    }
    rank
}

fn fp_dense(m: &Matrix) -> Dense<Fp> {
    let p = m.ring().characteristic();
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| match m.get(i, j) {
                    Element::Residue { value, .. } => Fp(*value, p),
                    other => panic!("{other}"),
                })
                .collect()
        })
        .collect()
}

fn rational(e: &Element) -> BigRational {
    match e {
        Element::Rational(r) => r.clone(),
        other => panic!("{other}"),
    }
}

/// Left-multiplication by `w + xi + yj + zk` on coordinates `(1, i, j, k)`.
fn left_block(q: &Element) -> [[BigRational; 4]; 4] {
    let c: Vec<BigRational> = q.coords().iter().map(rational).collect();
    let (w, x, y, z) = (c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone());
    [
        [w.clone(), -x.clone(), -y.clone(), -z.clone()],
        [x.clone(), w.clone(), -z.clone(), y.clone()],
        [y.clone(), z.clone(), w.clone(), -x.clone()],
        [z, -y, x, w],
    ]
}

/// Field-valued rank of `m` computed on an explicit dense copy.
fn oracle_rank(m: &Matrix) -> usize {
    match m.ring() {
        Ring::PrimeField(_) => rank(&fp_dense(m)),
        Ring::Rationals => rank(
            &(0..m.rows())
                .map(|i| (0..m.cols()).map(|j| rational(m.get(i, j))).collect())
                .collect::<Dense<BigRational>>(),
        ),
        Ring::RationalQuaternions => {
            let mut real = vec![vec![BigRational::zero(); 4 * m.cols()]; 4 * m.rows()];
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let b = left_block(m.get(i, j));
                    for (u, row) in b.iter().enumerate() {
                        for (v, x) in row.iter().enumerate() {
                            real[4 * i + u][4 * j + v] = x.clone();
                        }
                    }
                }
            }
            let r = rank(&real);
            assert_eq!(r % 4, 0);
            r / 4
        }
    }
}

enum Blk<'a> {
    M(&'a Matrix),
    Zero,
}

/// Entrywise assembly; every block row and column has a non-zero member.
fn assemble(grid: &[Vec<Blk>]) -> Matrix {
    let heights: Vec<usize> = grid
        .iter()
        .map(|row| {
            row.iter()
                .find_map(|b| if let Blk::M(m) = b { Some(m.rows()) } else { None })
                .unwrap()
        })
        .collect();
    let widths: Vec<usize> = (0..grid[0].len())
        .map(|j| {
            grid.iter()
                .find_map(|row| if let Blk::M(m) = &row[j] { Some(m.cols()) } else { None })
                .unwrap()
        })
        .collect();
    let ring = grid
        .iter()
        .flatten()
        .find_map(|b| if let Blk::M(m) = b { Some(m.ring()) } else { None })
        .unwrap();
    let (rows, cols) = (heights.iter().sum(), widths.iter().sum());
    let mut out = Matrix::zeros(ring, rows, cols);
    let mut r0 = 0;
    for (bi, row) in grid.iter().enumerate() {
        let mut c0 = 0;
        for (bj, b) in row.iter().enumerate() {
            if let Blk::M(m) = b {
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        out.set(r0 + i, c0 + j, m.get(i, j).clone());
                    }
                }
            }
            c0 += widths[bj];
        }
        r0 += heights[bi];
    }
    out
}

/// `[r1..r14, r_theta, r_pi]` from oracle ranks of the fifteen block matrices.
fn oracle_r(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> [i64; 16] {
    use Blk::{Zero as O, M};
    let k = |g: Vec<Vec<Blk>>| oracle_rank(&assemble(&g)) as i64;
    let ra = oracle_rank(a) as i64;
    let rb = oracle_rank(b) as i64;
    let rc = oracle_rank(c) as i64;
    let rd = oracle_rank(d) as i64;
    let ab = k(vec![vec![M(a), M(b)]]);
    let ac = k(vec![vec![M(a)], vec![M(c)]]);
    let ad = k(vec![vec![M(a)], vec![M(d)]]);
    let acd = k(vec![vec![M(a)], vec![M(c)], vec![M(d)]]);
    let cd = k(vec![vec![M(c)], vec![M(d)]]);
    let abc = k(vec![vec![M(a), M(b)], vec![M(c), O]]);
    let abd = k(vec![vec![M(a), M(b)], vec![M(d), O]]);
    let abcd = k(vec![vec![M(a), M(b)], vec![M(c), O], vec![M(d), O]]);
    let x1 = k(vec![vec![M(a), M(a)], vec![M(c), O], vec![O, M(d)]]);
    let x2 = k(vec![vec![M(a), M(a), M(b)], vec![M(c), O, O], vec![O, M(d), O]]);
    let x3 = k(vec![
        vec![O, M(a), M(b)],
        vec![M(a), M(a), O],
        vec![M(c), O, O],
        vec![O, M(d), O],
    ]);
    let r1 = ab - rb;
    let r2 = ra + rb - ab;
    let r5 = rc + ab - abc;
    let r4 = abc + ra - ab - ac;
    let r8 = x3 - ad - abc;
    let r10 = x2 - rc - abd;
    let r12 = ac + ad - acd + abcd - x3;
    let r13 = abc + abd + x1 - x2 - x3;
    let r14 = cd - abcd - x1 + x3;
    [
        r1,
        r2,
        ac - ra,
        r4,
        r5,
        acd - ac,
        ad + ac - ra - acd,
        r8,
        abc + abd - x3 + ra - ab,
        r10,
        rc + rd + ab - x2,
        r12,
        r13,
        r14,
        r1 - r5 - r10 - r13 - r14,
        r2 - r4 - r8 - r12,
    ]
}

fn as_signed(inv: &QuaternityInvariants) -> [i64; 16] {
    let v = inv.values();
    let mut out = [0i64; 16];
    for i in 0..16 {
        out[i] = v[i] as i64;
    }
    out
}

#[test]
fn matrix_rank_matches_column_elimination() {
    let rings = [
        Ring::PrimeField(2),
        Ring::PrimeField(3),
        Ring::PrimeField(7),
        Ring::Rationals,
        Ring::RationalQuaternions,
    ];
    for ring in rings {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for i in 0..150 {
            let (r, c) = (i % 6, (i / 6) % 6);
            let m = if i % 2 == 0 {
                gen_structured(ring, r, c, &mut rng)
            } else {
                gen_matrix(ring, r, c, &mut rng)
            };
            assert_eq!(m.rank(), oracle_rank(&m), "{ring} {r}x{c}:\n{m}");
        }
    }
}

#[test]
fn quaternion_rank_examples() {
    let h = Ring::RationalQuaternions;
    let q = |c: [i64; 4]| h.from_coords(&c.map(|v| Ring::Rationals.from_i64(v))).unwrap();
    let (i, j, k) = (q([0, 1, 0, 0]), q([0, 0, 1, 0]), q([0, 0, 0, 1]));
    let printed = Matrix::from_rows(h, vec![vec![i.clone(), j.clone()], vec![k.clone(), q([-1, 0, 0, 0])]]).unwrap();
    assert_eq!(oracle_rank(&printed), 2);
    assert_eq!(printed.rank(), 2);
    let dependent = Matrix::from_rows(h, vec![vec![i, j], vec![k, q([1, 0, 0, 0])]]).unwrap();
    assert_eq!(oracle_rank(&dependent), 1);
    assert_eq!(dependent.rank(), 1);
}

#[test]
fn quaternion_inverse_by_hand() {
    let h = Ring::RationalQuaternions;
    let unit_sum = h
        .from_coords(&[1, 1, 1, 1].map(|v| Ring::Rationals.from_i64(v)))
        .unwrap();
    let quarter = |n| Element::Rational(BigRational::new(BigInt::from(n), BigInt::from(4)));
    let expected = h
        .from_coords(&[quarter(1), quarter(-1), quarter(-1), quarter(-1)])
        .unwrap();
    assert_eq!(unit_sum.invert().unwrap(), expected);
    // product through the independent 4x4 table
    let l = left_block(&unit_sum);
    let x: Vec<BigRational> = expected.coords().iter().map(rational).collect();
    let prod: Vec<BigRational> = (0..4)
        .map(|r| (0..4).fold(BigRational::zero(), |acc, c| acc + &l[r][c] * &x[c]))
        .collect();
    assert!(prod[0].is_one() && prod[1..].iter().all(Zero::is_zero));
}

#[test]
fn regular_representation_multiplies_like_quaternions() {
    let h = Ring::RationalQuaternions;
    let q = |c: [i64; 4]| h.from_coords(&c.map(|v| Ring::Rationals.from_i64(v))).unwrap();
    let to_q = |rep: Vec<Vec<Element>>| -> Vec<Vec<BigRational>> {
        rep.iter().map(|r| r.iter().map(rational).collect()).collect()
    };
    let mul = |a: &Vec<Vec<BigRational>>, b: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..4)
            .map(|r| {
                (0..4)
                    .map(|c| (0..4).fold(BigRational::zero(), |acc, t| acc + &a[r][t] * &b[t][c]))
                    .collect()
            })
            .collect()
    };
    let (i, j, k) = (q([0, 1, 0, 0]), q([0, 0, 1, 0]), q([0, 0, 0, 1]));
    let ri = to_q(i.regular_representation());
    let rj = to_q(j.regular_representation());
    assert_eq!(mul(&ri, &rj), to_q(k.regular_representation()));
    for e in [&i, &j, &k] {
        let expected: Vec<Vec<BigRational>> = left_block(e).iter().map(|r| r.to_vec()).collect();
        assert_eq!(to_q(e.regular_representation()), expected);
    }
}

#[test]
fn invariants_match_oracle_ranks_on_fixed_gf3_shape() {
    let r = Ring::PrimeField(3);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..40 {
        let a = gen_structured(r, 4, 4, &mut rng);
        let b = gen_structured(r, 4, 2, &mut rng);
        let c = gen_structured(r, 3, 4, &mut rng);
        let d = gen_structured(r, 3, 4, &mut rng);
        let inv = quaternity_invariants(&a, &b, &c, &d).unwrap();
        assert_eq!(as_signed(&inv), oracle_r(&a, &b, &c, &d));
        assert_eq!(inv.dims, [4, 4, 2, 3, 3]);
        assert!(verify_consistency(&a, &b, &c, &d, &inv).unwrap().passed);
    }
}

#[test]
fn invariants_match_oracle_ranks_on_random_quaternities() {
    for ring in [Ring::PrimeField(5), Ring::Rationals, Ring::RationalQuaternions] {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..25 {
            let q = gen_quaternity(ring, DimBounds::up_to(3), &mut rng);
            let inv = quaternity_invariants(&q.a, &q.b, &q.c, &q.d).unwrap();
            assert_eq!(as_signed(&inv), oracle_r(&q.a, &q.b, &q.c, &q.d), "{ring}");
            assert_eq!(inv.rank_b, oracle_rank(&q.b));
        }
    }
}

#[test]
fn dual_invariants_match_oracle_ranks() {
    use Blk::{Zero as O, M};
    for ring in [Ring::PrimeField(5), Ring::Rationals] {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let d = gen_dual_array(ring, DimBounds::up_to(3), &mut rng);
            let (e, f, g, h) = (&d.e, &d.f, &d.g, &d.h);
            let k = |grid: Vec<Vec<Blk>>| oracle_rank(&assemble(&grid)) as i64;
            let (re, rf, rg, rh) = (
                oracle_rank(e) as i64,
                oracle_rank(f) as i64,
                oracle_rank(g) as i64,
                oracle_rank(h) as i64,
            );
            let eh = k(vec![vec![M(e)], vec![M(h)]]);
            let ef = k(vec![vec![M(e), M(f)]]);
            let eg = k(vec![vec![M(e), M(g)]]);
            let fg = k(vec![vec![M(f), M(g)]]);
            let efg = k(vec![vec![M(e), M(f), M(g)]]);
            let ef_h = k(vec![vec![M(e), M(f)], vec![M(h), O]]);
            let eg_h = k(vec![vec![M(e), M(g)], vec![M(h), O]]);
            let efg_h = k(vec![vec![M(e), M(f), M(g)], vec![M(h), O, O]]);
            let y1 = k(vec![vec![M(e), M(f), O], vec![M(e), O, M(g)]]);
            let y2 = k(vec![vec![M(e), M(f), O], vec![M(e), O, M(g)], vec![M(h), O, O]]);
            let y3 = k(vec![
                vec![O, M(e), M(f), O],
                vec![M(e), M(e), O, M(g)],
                vec![M(h), O, O, O],
            ]);
            let expected = [
                re + rh - eh,
                eh - rh,
                eh - re,
                rf + eh - ef_h,
                ef_h - rf - rh,
                ef_h + re - eh - ef,
                ef + rh - ef_h,
                ef - re,
                rf + rg + eh - y2,
                y2 - rf - eg_h,
                ef_h + eg_h + y1 - y2 - y3,
                fg - efg_h - y1 + y3,
                re - eh - y1 + y2,
                y3 - eg - ef_h,
                ef + eg - efg + efg_h - y3,
                y1 - re - fg,
                efg - ef,
            ];
            let inv = dual_invariants(e, f, g, h).unwrap();
            let got: Vec<i64> = inv.values()[..17].iter().map(|&v| v as i64).collect();
            assert_eq!(got, expected.to_vec(), "{ring}");
        }
    }
}

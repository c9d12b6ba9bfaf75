//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use fiberq::exactq::{int, Rational, RationalMatrix, Vector};
use fiberq::groupoid::FiniteGroupoid;
use fiberq::homalg::GradedSpace;
use fiberq::ruth::{RuthData, Simplex};
use fiberq::shifted::{OneShiftedFiber, ZeroShiftedFiber};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut impl Rng) -> Rational {
    int(rng.gen_range(-2..=2))
}

/// Random integer matrix; about a third of the entries are zero on top of
/// the zeros `small` draws anyway.
pub fn matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> RationalMatrix {
    RationalMatrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(0.33) {
            int(0)
        } else {
            small(rng)
        }
    })
}

/// Random matrix of rank at most `rank`.
pub fn low_rank(rng: &mut impl Rng, rows: usize, cols: usize, rank: usize) -> RationalMatrix {
    &matrix(rng, rows, rank) * &matrix(rng, rank, cols)
}

pub fn antisymmetric(rng: &mut impl Rng, n: usize) -> RationalMatrix {
    let m = matrix(rng, n, n);
    &m - &m.transpose()
}

pub fn invertible(rng: &mut impl Rng, n: usize) -> RationalMatrix {
    loop {
        let m = matrix(rng, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// Rows spanning the left kernel of `m`, each mixed with random weights:
/// a `count × m.rows()` matrix `K` with `K m = 0`.
pub fn left_annihilator(rng: &mut impl Rng, m: &RationalMatrix, count: usize) -> RationalMatrix {
    let basis: Vec<Vector> = m.transpose().kernel_basis();
    let n = m.rows();
    if basis.is_empty() {
        return RationalMatrix::zeros(count, n);
    }
    let span = RationalMatrix::from_columns(n, &basis).transpose();
    &matrix(rng, count, basis.len()) * &span
}

fn anchor(rng: &mut impl Rng, tm: usize, a: usize) -> RationalMatrix {
    let r = rng.gen_range(0..=tm.min(a));
    if rng.gen_bool(0.5) {
        low_rank(rng, tm, a, r)
    } else {
        matrix(rng, tm, a)
    }
}

/// Random 0-shifted fiber with `dim A ≤ 3`, `dim TM ≤ 4` satisfying all invariants.
///
/// `θ` is drawn from the left kernel of `ρ`. If `θ ≠ 0` then `F = φρ` and
/// `D = θᵀφ − φᵀθ + QᵀWQ` with `Qρ = 0` and `W` antisymmetric, which gives
/// `ρᵀD = −Fᵀθ`. If `θ = 0`, `F` is free and `D = QᵀWQ`.
pub fn zero_shifted(rng: &mut impl Rng) -> ZeroShiftedFiber {
    let a = rng.gen_range(0..=3);
    let tm = rng.gen_range(0..=4);
    let rho = anchor(rng, tm, a);
    let theta = if rng.gen_bool(0.8) {
        left_annihilator(rng, &rho, 1)
    } else {
        RationalMatrix::zeros(1, tm)
    };
    let q_rows = rng.gen_range(0..=tm);
    let q = left_annihilator(rng, &rho, q_rows);
    let w = antisymmetric(rng, q_rows);
    let mut d = &(&q.transpose() * &w) * &q;
    let f = if theta.is_zero() {
        matrix(rng, 1, a)
    } else {
        let phi = matrix(rng, 1, tm);
        d = &(&d + &(&theta.transpose() * &phi)) - &(&phi.transpose() * &theta);
        &phi * &rho
    };
    let p = ZeroShiftedFiber { dim_a: a, dim_tm: tm, anchor: rho, form: theta, curvature: f, form_differential: d };
    p.validate().expect("generator satisfies the invariants");
    p
}

/// Random +1-shifted fiber with a base form, `dim A ≤ 4`, `dim TM ≤ 3`,
/// satisfying the commuting square.
///
/// With `e = φρ`, `B = ℓᵀφ + ρᵀM + Y Nᵀ` where `M` is antisymmetric and the
/// columns of `N` span the left kernel of `ρ`; the last two terms lie in the
/// kernel of `B ↦ Bρ + (Bρ)ᵀ`.
pub fn one_shifted(rng: &mut impl Rng) -> OneShiftedFiber {
    let tm = rng.gen_range(0..=3);
    let a = if rng.gen_bool(0.5) { tm + 1 } else { rng.gen_range(0..=4) };
    let rho = anchor(rng, tm, a);
    let ell = matrix(rng, 1, a);
    let phi = matrix(rng, 1, tm);
    let e = &phi * &rho;
    let m = antisymmetric(rng, tm);
    let n_rows = rng.gen_range(0..=tm);
    let n = left_annihilator(rng, &rho, n_rows);
    let y = matrix(rng, a, n_rows);
    let b = &(&(&ell.transpose() * &phi) + &(&rho.transpose() * &m)) + &(&y * &n);
    let base = left_annihilator(rng, &rho, 1);
    let p = OneShiftedFiber {
        dim_a: a,
        dim_tm: tm,
        anchor: rho,
        algebroid_form: ell,
        mixed_differential: b,
        connection_form: e,
        base_form: Some(base),
    };
    p.validate().expect("generator satisfies the invariants");
    p
}

/// ℤ/2 acting by −1 on `C = ℚ` (degree −1) and `V = ℚ` (degree 0), `δ = 1`.
pub fn z2_two_term() -> RuthData {
    let g = Arc::new(FiniteGroupoid::cyclic(2));
    let one = RationalMatrix::from_i64(&[&[1]]);
    let minus = RationalMatrix::from_i64(&[&[-1]]);
    RuthData::uniform(g, GradedSpace::new([(-1, 1), (0, 1)]))
        .with_op(Simplex::Object(0), -1, one)
        .unwrap()
        .with_op(Simplex::Arrows(vec![1]), -1, minus.clone())
        .unwrap()
        .with_op(Simplex::Arrows(vec![1]), 0, minus)
        .unwrap()
}

fn permutation_matrix(perm: &str) -> RationalMatrix {
    let images: Vec<usize> = perm.bytes().map(|b| (b - b'1') as usize).collect();
    RationalMatrix::from_fn(3, 3, |i, j| int((images[j] == i) as i64))
}

/// The sum-zero inclusion `ℚ² → ℚ³` with basis `e1 − e2`, `e2 − e3`.
pub fn s3_boundary() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[1, 0], &[-1, 1], &[0, -1]])
}

/// Strict representation of S₃ on `ℚ²` (degree −1) ⊕ `ℚ³` (degree 0): the
/// permutation action on `ℚ³`, its restriction to the sum-zero plane on `ℚ²`,
/// and the inclusion as differential.
pub fn s3_strict() -> RuthData {
    let g = Arc::new(FiniteGroupoid::symmetric3());
    let delta = s3_boundary();
    let mut r = RuthData::uniform(g.clone(), GradedSpace::new([(-1, 2), (0, 3)]))
        .with_op(Simplex::Object(0), -1, delta.clone())
        .unwrap();
    for a in 0..g.arrow_count() {
        if g.is_unit(a) {
            continue;
        }
        let p = permutation_matrix(g.arrow_name(a));
        let pd = &p * &delta;
        let restricted = delta.solve_matrix(&pd).expect("the sum-zero plane is invariant");
        r.set_op(Simplex::Arrows(vec![a]), -1, restricted).unwrap();
        r.set_op(Simplex::Arrows(vec![a]), 0, p).unwrap();
    }
    r
}

/// Pair groupoid on `n` objects acting trivially on `C = ℚ^c` (degree −1) and
/// `V = ℚ^v` (degree 0) with a random differential.
pub fn pair_two_term(rng: &mut impl Rng, n: usize, c: usize, v: usize) -> RuthData {
    let g = Arc::new(FiniteGroupoid::pair(n));
    let delta = matrix(rng, v, c);
    let mut r = RuthData::uniform(g.clone(), GradedSpace::new([(-1, c), (0, v)]));
    for x in 0..n {
        r.set_op(Simplex::Object(x), -1, delta.clone()).unwrap();
    }
    for a in (0..g.arrow_count()).filter(|&a| !g.is_unit(a)) {
        r.set_op(Simplex::Arrows(vec![a]), -1, RationalMatrix::identity(c)).unwrap();
        r.set_op(Simplex::Arrows(vec![a]), 0, RationalMatrix::identity(v)).unwrap();
    }
    r
}

/// Random lift `V_{s(g)} → C_{t(g)}` on every non-unit arrow.
pub fn random_lift(rng: &mut impl Rng, r: &RuthData) -> std::collections::BTreeMap<usize, RationalMatrix> {
    let g = r.groupoid();
    (0..g.arrow_count())
        .filter(|&a| !g.is_unit(a))
        .map(|a| (a, matrix(rng, r.fiber(g.tgt(a)).dim(-1), r.fiber(g.src(a)).dim(0))))
        .collect()
}

//! The linear groupoid `C ⋉ V` attached to a two-term representation, and
//! re-extraction of a representation from it through a chosen lift.
//!
//! An arrow over `g : x → y` is a triple `(c, g, v)` with `c ∈ C_y`, `v ∈ V_x`:
//!
//! ```text
//! source (c, g, v) = v
//! target (c, g, v) = δ c + Δ^V_g v
//! (c1, g1, v1)·(c2, g2, v2) = (c1 + Δ^C_{g1} c2 − Ω_{g1,g2} v2, g1 g2, v2)
//! ```

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{RuthData, RuthError, Simplex};
use crate::exactq::{Rational, RationalMatrix, Vector};
use crate::groupoid::{ArrowId, ObjId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VbgArrow {
    pub core: Vector,
    pub base: ArrowId,
    pub side: Vector,
}

/// Structure maps of the semidirect product, evaluated directly from the
/// two-term data `(δ, Δ^C, Δ^V, Ω)`.
pub struct SemidirectProduct<'a> {
    ruth: &'a RuthData,
}

fn basis(dim: usize) -> impl Iterator<Item = Vector> {
    (0..dim).map(move |i| {
        let mut e = vec![Rational::zero(); dim];
        e[i] = num_traits::One::one();
        e
    })
}

fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn zero(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

impl<'a> SemidirectProduct<'a> {
    pub fn new(ruth: &'a RuthData) -> Result<Self, RuthError> {
        ruth.require_two_term()?;
        Ok(Self { ruth })
    }

    fn core_dim(&self, x: ObjId) -> usize {
        self.ruth.fiber(x).dim(-1)
    }

    fn base_dim(&self, x: ObjId) -> usize {
        self.ruth.fiber(x).dim(0)
    }

    pub fn source(&self, a: &VbgArrow) -> Vector {
        a.side.clone()
    }

    pub fn target(&self, a: &VbgArrow) -> Vector {
        let g = self.ruth.groupoid();
        let y = g.tgt(a.base);
        add(
            &self.ruth.core_differential(y).mul_vec(&a.core),
            &self.ruth.base_action(a.base).mul_vec(&a.side),
        )
    }

    /// `a · b`; `None` unless `source(a) = target(b)` over composable arrows.
    pub fn multiply(&self, a: &VbgArrow, b: &VbgArrow) -> Option<VbgArrow> {
        let g = self.ruth.groupoid();
        let base = g.compose(a.base, b.base)?;
        if a.side != self.target(b) {
            return None;
        }
        let core = sub(
            &add(&a.core, &self.ruth.core_action(a.base).mul_vec(&b.core)),
            &self.ruth.curvature_term(a.base, b.base).mul_vec(&b.side),
        );
        Some(VbgArrow { core, base, side: b.side.clone() })
    }

    pub fn unit(&self, x: ObjId, v: Vector) -> VbgArrow {
        VbgArrow { core: zero(self.core_dim(x)), base: self.ruth.groupoid().unit(x), side: v }
    }

    pub fn inverse(&self, a: &VbgArrow) -> VbgArrow {
        let gr = self.ruth.groupoid();
        let gi = gr.inv(a.base);
        let core = add(
            &(-&self.ruth.core_action(gi)).mul_vec(&a.core),
            &self.ruth.curvature_term(gi, a.base).mul_vec(&a.side),
        );
        VbgArrow { core, base: gi, side: self.target(a) }
    }

    /// The arrow `(c, 1_x, 0)` of the core.
    pub fn core_element(&self, x: ObjId, c: Vector) -> VbgArrow {
        VbgArrow { core: c, base: self.ruth.groupoid().unit(x), side: zero(self.base_dim(x)) }
    }

    /// The zero arrow over `g`.
    pub fn zero_over(&self, g: ArrowId) -> VbgArrow {
        let gr = self.ruth.groupoid();
        VbgArrow {
            core: zero(self.core_dim(gr.tgt(g))),
            base: g,
            side: zero(self.base_dim(gr.src(g))),
        }
    }

    fn difference(&self, a: &VbgArrow, b: &VbgArrow) -> VbgArrow {
        assert_eq!(a.base, b.base);
        VbgArrow { core: sub(&a.core, &b.core), base: a.base, side: sub(&a.side, &b.side) }
    }

    /// Checks source/target compatibility, units, inverses and associativity on
    /// basis parameters. Every map involved is linear in the free vectors, so
    /// basis vectors suffice.
    pub fn verify_axioms(&self) -> Result<(), RuthError> {
        let gr = self.ruth.groupoid();
        let name = |t: &[ArrowId]| Simplex::Arrows(t.to_vec()).describe(gr);
        let violation = |axiom, t: &[ArrowId]| RuthError::GroupoidAxiomViolation { axiom, arrows: name(t) };

        for g in 0..gr.arrow_count() {
            let (x, y) = (gr.src(g), gr.tgt(g));
            for a in self.arrows_over(g) {
                let left = self.multiply(&self.unit(y, self.target(&a)), &a);
                let right = self.multiply(&a, &self.unit(x, a.side.clone()));
                if left.as_ref() != Some(&a) || right.as_ref() != Some(&a) {
                    return Err(violation("unit law", &[g]));
                }
                let inv = self.inverse(&a);
                if self.multiply(&a, &inv) != Some(self.unit(y, self.target(&a)))
                    || self.multiply(&inv, &a) != Some(self.unit(x, a.side.clone()))
                {
                    return Err(violation("inverse law", &[g]));
                }
            }
        }
        for t in gr.composable_tuples(2) {
            let (g1, g2) = (t[0], t[1]);
            for (c1, b) in self.parameters(g1, g2) {
                let a = VbgArrow { core: c1, base: g1, side: self.target(&b) };
                let ab = self.multiply(&a, &b).ok_or_else(|| violation("composability", &t))?;
                if ab.side != b.side || self.target(&ab) != self.target(&a) {
                    return Err(violation("source/target of product", &t));
                }
            }
        }
        for t in gr.composable_tuples(3) {
            let (g1, g2, g3) = (t[0], t[1], t[2]);
            for (c2, c) in self.parameters(g2, g3) {
                let b = VbgArrow { core: c2, base: g2, side: self.target(&c) };
                for c1 in basis_or_zero(self.core_dim(gr.tgt(g1))) {
                    let a = VbgArrow { core: c1, base: g1, side: self.target(&b) };
                    let ab_c = self.multiply(&a, &b).and_then(|ab| self.multiply(&ab, &c));
                    let a_bc = self.multiply(&b, &c).and_then(|bc| self.multiply(&a, &bc));
                    if ab_c.is_none() || ab_c != a_bc {
                        return Err(violation("associativity", &t));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis of arrows over `g`: `(e_i, g, 0)` and `(0, g, e_j)`, or the zero arrow.
    fn arrows_over(&self, g: ArrowId) -> Vec<VbgArrow> {
        let gr = self.ruth.groupoid();
        let (cd, vd) = (self.core_dim(gr.tgt(g)), self.base_dim(gr.src(g)));
        let mut out: Vec<VbgArrow> = basis(cd)
            .map(|c| VbgArrow { core: c, base: g, side: zero(vd) })
            .chain(basis(vd).map(|v| VbgArrow { core: zero(cd), base: g, side: v }))
            .collect();
        if out.is_empty() {
            out.push(self.zero_over(g));
        }
        out
    }

    /// Pairs `(c1, b)` spanning the composable pairs over `(g1, g2)`: one
    /// parameter nonzero at a time.
    fn parameters(&self, g1: ArrowId, g2: ArrowId) -> Vec<(Vector, VbgArrow)> {
        let gr = self.ruth.groupoid();
        let c1_dim = self.core_dim(gr.tgt(g1));
        let mut out: Vec<(Vector, VbgArrow)> = self
            .arrows_over(g2)
            .into_iter()
            .map(|b| (zero(c1_dim), b))
            .collect();
        for c1 in basis(c1_dim) {
            out.push((c1, self.zero_over(g2)));
        }
        out
    }
}

fn basis_or_zero(dim: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = basis(dim).collect();
    out.push(zero(dim));
    out
}

/// Builds the semidirect product of a two-term representation, checks its
/// groupoid axioms, and re-extracts a representation through the lift
/// `h_g(v) = (c_g v, g, v)`. Missing entries of `lift` are zero; the lift must
/// vanish on units. The result is expected to verify; with a zero lift it
/// equals the input.
pub fn semidirect_roundtrip(
    r: &RuthData,
    lift: &BTreeMap<ArrowId, RationalMatrix>,
) -> Result<RuthData, RuthError> {
    let vbg = SemidirectProduct::new(r)?;
    let gr = r.groupoid().clone();
    let lift_of = |g: ArrowId| -> Result<RationalMatrix, RuthError> {
        let expected = (vbg.core_dim(gr.tgt(g)), vbg.base_dim(gr.src(g)));
        match lift.get(&g) {
            None => Ok(RationalMatrix::zeros(expected.0, expected.1)),
            Some(m) if m.shape() == expected => Ok(m.clone()),
            Some(m) => Err(RuthError::DimensionMismatch {
                simplex: format!("lift at {}", gr.arrow_name(g)),
                degree: 0,
                expected,
                found: m.shape(),
            }),
        }
    };
    for x in 0..gr.object_count() {
        if !lift_of(gr.unit(x))?.is_zero() {
            return Err(RuthError::LiftNotNormalized { object: gr.object_name(x).to_string() });
        }
    }
    vbg.verify_axioms()?;

    let horizontal = |g: ArrowId, v: Vector| -> Result<VbgArrow, RuthError> {
        Ok(VbgArrow { core: lift_of(g)?.mul_vec(&v), base: g, side: v })
    };
    let broken = |axiom, t: &[ArrowId]| RuthError::GroupoidAxiomViolation {
        axiom,
        arrows: Simplex::Arrows(t.to_vec()).describe(&gr),
    };

    let mut out = RuthData::new(gr.clone(), r.fibers().to_vec())?;
    let mut store = |s: Simplex, n: i32, m: RationalMatrix| -> Result<(), RuthError> {
        let implicit = if s.is_unit_arrow(&gr) {
            m == RationalMatrix::identity(m.rows())
        } else {
            m.is_zero()
        };
        if implicit {
            Ok(())
        } else {
            out.set_op(s, n, m)
        }
    };

    for x in 0..gr.object_count() {
        let cols: Vec<Vector> = basis(vbg.core_dim(x))
            .map(|c| vbg.target(&vbg.core_element(x, c)))
            .collect();
        store(Simplex::Object(x), -1, RationalMatrix::from_columns(vbg.base_dim(x), &cols))?;
    }
    for g in 0..gr.arrow_count() {
        let (x, y) = (gr.src(g), gr.tgt(g));
        let base_cols = basis(vbg.base_dim(x))
            .map(|v| Ok(vbg.target(&horizontal(g, v)?)))
            .collect::<Result<Vec<_>, RuthError>>()?;
        let mut core_cols = Vec::new();
        for c in basis(vbg.core_dim(x)) {
            let lifted = horizontal(g, vbg.target(&vbg.core_element(x, c.clone())))?;
            let conj = vbg
                .multiply(&lifted, &vbg.core_element(x, c))
                .and_then(|p| vbg.multiply(&p, &vbg.zero_over(gr.inv(g))))
                .ok_or_else(|| broken("composability", &[g]))?;
            core_cols.push(conj.core);
        }
        let s = Simplex::Arrows(vec![g]);
        store(s.clone(), 0, RationalMatrix::from_columns(vbg.base_dim(y), &base_cols))?;
        store(s, -1, RationalMatrix::from_columns(vbg.core_dim(y), &core_cols))?;
    }
    for t in gr.composable_tuples(2) {
        let (g1, g2) = (t[0], t[1]);
        let g12 = gr.product(&t);
        let mut cols = Vec::new();
        for v in basis(vbg.base_dim(gr.src(g2))) {
            let h2 = horizontal(g2, v.clone())?;
            let through = vbg
                .multiply(&horizontal(g1, vbg.target(&h2))?, &h2)
                .ok_or_else(|| broken("composability", &t))?;
            let diff = vbg.difference(&horizontal(g12, v)?, &through);
            let core = vbg
                .multiply(&diff, &vbg.zero_over(gr.inv(g12)))
                .ok_or_else(|| broken("composability", &t))?;
            cols.push(core.core);
        }
        let omega = RationalMatrix::from_columns(vbg.core_dim(gr.tgt(g1)), &cols);
        store(Simplex::Arrows(t.clone()), 0, -&omega)?;
    }
    Ok(out)
}

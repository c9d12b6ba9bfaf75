//! Representations up to homotopy over a finite groupoid.
//!
//! A representation assigns a graded space `V_x` to every object and a
//! structure operator `R_k(g_1, …, g_k) : V^n_{s(g_k)} → V^{n+1−k}_{t(g_1)}`
//! to every composable tuple, subject to the coherence identities
//!
//! ```text
//! Σ_{j=1}^{k−1} (−1)^j R_{k−1}(…, g_j g_{j+1}, …) = Σ_{j=0}^{k} (−1)^j R_j(g_1..g_j) ∘ R_{k−j}(g_{j+1}..g_k)
//! ```
//!
//! where `R_0` is the differential at the relevant object. Operators are stored
//! sparsely: a missing entry is zero, except `R_1(1_x)` which is the identity.

mod constructions;
mod semidirect;

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactq::{Rational, RationalMatrix};
use crate::groupoid::{ArrowId, FiniteGroupoid, ObjId};
use crate::homalg::{CochainComplex, GradedSpace};

pub use constructions::{
    character, cone_ruth, dual_ruth, tensor_ruth, twisted_dual_direct, twisted_dual_ruth,
};
pub use semidirect::{semidirect_roundtrip, SemidirectProduct, VbgArrow};

/// Highest arity of coherence identities that gets checked.
pub const KMAX: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuthError {
    #[error("operator {simplex} in degree {degree}: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        simplex: String,
        degree: i32,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("{simplex} is not a composable tuple")]
    NotComposable { simplex: String },
    #[error("fiber table has {found} entries for {expected} objects")]
    FiberCount { expected: usize, found: usize },
    #[error("{kind} identity fails at k = {k}, {simplex}, degree {degree} (residual {residual})")]
    IdentityViolation {
        kind: ViolationKind,
        k: usize,
        simplex: String,
        degree: i32,
        residual: Rational,
    },
    #[error("representation is not strict: {0}")]
    NotAStrictRepresentation(String),
    #[error("representation is not a line: {0}")]
    NotALineRepresentation(String),
    #[error("operands live over different groupoids")]
    GroupoidMismatch,
    #[error("data is not concentrated in degrees -1 and 0")]
    NotTwoTerm,
    #[error("lift shift is nonzero at the unit of {object}")]
    LiftNotNormalized { object: String },
    #[error("semidirect product violates {axiom} at {arrows}")]
    GroupoidAxiomViolation { axiom: &'static str, arrows: String },
    #[error("two constructions of the same operator disagree at {simplex}, degree {degree}")]
    CrossCheckMismatch { simplex: String, degree: i32 },
}

/// A nerve element: an object (arity 0) or a nonempty composable tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Simplex {
    Object(ObjId),
    Arrows(Vec<ArrowId>),
}

impl Simplex {
    pub fn arity(&self) -> usize {
        match self {
            Simplex::Object(_) => 0,
            Simplex::Arrows(t) => t.len(),
        }
    }

    pub fn source(&self, g: &FiniteGroupoid) -> ObjId {
        match self {
            Simplex::Object(x) => *x,
            Simplex::Arrows(t) => g.src(*t.last().expect("nonempty tuple")),
        }
    }

    pub fn target(&self, g: &FiniteGroupoid) -> ObjId {
        match self {
            Simplex::Object(x) => *x,
            Simplex::Arrows(t) => g.tgt(t[0]),
        }
    }

    /// The first `j` arrows, or the target object when `j = 0`.
    pub fn head(&self, g: &FiniteGroupoid, j: usize) -> Simplex {
        match (self, j) {
            (Simplex::Object(x), _) => Simplex::Object(*x),
            (Simplex::Arrows(t), 0) => Simplex::Object(g.tgt(t[0])),
            (Simplex::Arrows(t), j) => Simplex::Arrows(t[..j].to_vec()),
        }
    }

    /// The arrows after position `j`, or the source object when `j = k`.
    pub fn tail(&self, g: &FiniteGroupoid, j: usize) -> Simplex {
        match self {
            Simplex::Object(x) => Simplex::Object(*x),
            Simplex::Arrows(t) if j == t.len() => Simplex::Object(g.src(t[j - 1])),
            Simplex::Arrows(t) => Simplex::Arrows(t[j..].to_vec()),
        }
    }

    fn is_degenerate(&self, g: &FiniteGroupoid) -> bool {
        match self {
            Simplex::Object(_) => false,
            Simplex::Arrows(t) => t.iter().any(|&a| g.is_unit(a)),
        }
    }

    fn is_unit_arrow(&self, g: &FiniteGroupoid) -> bool {
        matches!(self, Simplex::Arrows(t) if t.len() == 1 && g.is_unit(t[0]))
    }

    /// `(g_k⁻¹, …, g_1⁻¹)`; objects are fixed.
    pub fn reversed_inverses(&self, g: &FiniteGroupoid) -> Simplex {
        match self {
            Simplex::Object(x) => Simplex::Object(*x),
            Simplex::Arrows(t) => Simplex::Arrows(g.reversed_inverses(t)),
        }
    }

    /// Arrow `g_1 ⋯ g_k`, or the unit for an object.
    pub fn product(&self, g: &FiniteGroupoid) -> ArrowId {
        match self {
            Simplex::Object(x) => g.unit(*x),
            Simplex::Arrows(t) => g.product(t),
        }
    }

    pub fn describe(&self, g: &FiniteGroupoid) -> String {
        match self {
            Simplex::Object(x) => format!("object {}", g.object_name(*x)),
            Simplex::Arrows(t) => {
                let names: Vec<&str> = t.iter().map(|&a| g.arrow_name(a)).collect();
                format!("({})", names.join(", "))
            }
        }
    }

    /// All nerve elements of arity `k`, objects first for `k = 0`.
    pub fn all(g: &FiniteGroupoid, k: usize) -> Vec<Simplex> {
        if k == 0 {
            (0..g.object_count()).map(Simplex::Object).collect()
        } else {
            g.composable_tuples(k).into_iter().map(Simplex::Arrows).collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// A unit-indexed operator differs from its forced value.
    Normalization,
    /// A coherence identity has nonzero residual.
    Identity,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Normalization => "normalization",
            ViolationKind::Identity => "coherence",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub kind: ViolationKind,
    pub k: usize,
    pub simplex: Simplex,
    pub degree: i32,
    /// Largest absolute entry of the difference of both sides.
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuthReport {
    pub passes: bool,
    /// Number of (simplex, degree) instances evaluated.
    pub checked: usize,
    pub violations: usize,
    /// Largest residual; the first in check order on ties. Normalization
    /// failures take precedence over identity failures.
    pub worst: Option<Residual>,
    /// Human-readable location of `worst`.
    pub worst_location: Option<String>,
}

impl RuthReport {
    fn from_residuals(g: &FiniteGroupoid, checked: usize, residuals: Vec<Residual>) -> Self {
        let violations = residuals.len();
        let mut worst: Option<Residual> = None;
        for r in residuals {
            let better = match &worst {
                None => true,
                Some(w) => match (w.kind, r.kind) {
                    (ViolationKind::Identity, ViolationKind::Normalization) => true,
                    (ViolationKind::Normalization, ViolationKind::Identity) => false,
                    _ => r.value > w.value,
                },
            };
            if better {
                worst = Some(r);
            }
        }
        let worst_location = worst.as_ref().map(|w| w.simplex.describe(g));
        Self { passes: violations == 0, checked, violations, worst, worst_location }
    }

    /// Turns a failing report into [`RuthError::IdentityViolation`].
    pub fn into_result(self) -> Result<(), RuthError> {
        match (self.worst, self.worst_location) {
            (Some(w), Some(loc)) => Err(RuthError::IdentityViolation {
                kind: w.kind,
                k: w.k,
                simplex: loc,
                degree: w.degree,
                residual: w.value,
            }),
            _ => Ok(()),
        }
    }
}

type OpTable = BTreeMap<(Simplex, i32), RationalMatrix>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuthData {
    groupoid: Arc<FiniteGroupoid>,
    fibers: Vec<GradedSpace>,
    ops: OpTable,
}

impl RuthData {
    pub fn new(groupoid: Arc<FiniteGroupoid>, fibers: Vec<GradedSpace>) -> Result<Self, RuthError> {
        if fibers.len() != groupoid.object_count() {
            return Err(RuthError::FiberCount {
                expected: groupoid.object_count(),
                found: fibers.len(),
            });
        }
        Ok(Self { groupoid, fibers, ops: BTreeMap::new() })
    }

    /// Same fiber at every object.
    pub fn uniform(groupoid: Arc<FiniteGroupoid>, fiber: GradedSpace) -> Self {
        let fibers = vec![fiber; groupoid.object_count()];
        Self { groupoid, fibers, ops: BTreeMap::new() }
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn fiber(&self, x: ObjId) -> &GradedSpace {
        &self.fibers[x]
    }

    pub fn fibers(&self) -> &[GradedSpace] {
        &self.fibers
    }

    /// Stored operators keyed by (simplex, source degree).
    pub fn stored_ops(&self) -> &BTreeMap<(Simplex, i32), RationalMatrix> {
        &self.ops
    }

    /// Shape of `R_k(s)` on source degree `n`.
    pub fn op_shape(&self, s: &Simplex, degree: i32) -> (usize, usize) {
        let g = &self.groupoid;
        let k = s.arity() as i32;
        (
            self.fibers[s.target(g)].dim(degree + 1 - k),
            self.fibers[s.source(g)].dim(degree),
        )
    }

    /// Stores `R_k(s)` on source degree `degree`.
    pub fn set_op(&mut self, s: Simplex, degree: i32, m: RationalMatrix) -> Result<(), RuthError> {
        if let Simplex::Arrows(t) = &s {
            if t.is_empty() || !self.groupoid.is_composable(t) {
                return Err(RuthError::NotComposable { simplex: format!("{t:?}") });
            }
        }
        let expected = self.op_shape(&s, degree);
        if m.shape() != expected {
            return Err(RuthError::DimensionMismatch {
                simplex: s.describe(&self.groupoid),
                degree,
                expected,
                found: m.shape(),
            });
        }
        self.ops.insert((s, degree), m);
        Ok(())
    }

    pub fn with_op(mut self, s: Simplex, degree: i32, m: RationalMatrix) -> Result<Self, RuthError> {
        self.set_op(s, degree, m)?;
        Ok(self)
    }

    /// Effective operator: stored value, identity for `R_1(1_x)`, otherwise zero (`None`).
    pub fn op(&self, s: &Simplex, degree: i32) -> Option<Cow<'_, RationalMatrix>> {
        if let Some(m) = self.ops.get(&(s.clone(), degree)) {
            return Some(Cow::Borrowed(m));
        }
        if s.is_unit_arrow(&self.groupoid) {
            let x = s.source(&self.groupoid);
            return Some(Cow::Owned(RationalMatrix::identity(self.fibers[x].dim(degree))));
        }
        None
    }

    /// Effective operator as a dense matrix.
    pub fn op_matrix(&self, s: &Simplex, degree: i32) -> RationalMatrix {
        match self.op(s, degree) {
            Some(m) => m.into_owned(),
            None => {
                let (r, c) = self.op_shape(s, degree);
                RationalMatrix::zeros(r, c)
            }
        }
    }

    /// The complex `(V_x, R_0(x))`.
    pub fn underlying_complex(&self, x: ObjId) -> CochainComplex {
        let fiber = self.fibers[x].clone();
        let d = fiber
            .degrees()
            .map(|n| (n, self.op_matrix(&Simplex::Object(x), n)))
            .collect();
        CochainComplex::new(fiber, d)
    }

    /// True when both carry the same groupoid, fibers and effective operators.
    pub fn same_data(&self, other: &RuthData) -> bool {
        if self.groupoid != other.groupoid || self.fibers != other.fibers {
            return false;
        }
        let keys: BTreeSet<&(Simplex, i32)> = self.ops.keys().chain(other.ops.keys()).collect();
        keys.into_iter().all(|(s, n)| self.op_matrix(s, *n) == other.op_matrix(s, *n))
    }

    /// Differs from `other` at this (simplex, degree), if anywhere.
    pub(crate) fn first_difference(&self, other: &RuthData) -> Option<(Simplex, i32)> {
        let keys: BTreeSet<&(Simplex, i32)> = self.ops.keys().chain(other.ops.keys()).collect();
        keys.into_iter()
            .find(|(s, n)| self.op_matrix(s, *n) != other.op_matrix(s, *n))
            .cloned()
    }

    /// Checks normalization and every coherence identity with `k ≤ KMAX`.
    pub fn verify(&self) -> RuthReport {
        let g = &*self.groupoid;
        let mut residuals = Vec::new();
        let mut checked = 0;
        for ((s, n), m) in &self.ops {
            let expected_zero = s.arity() > 1 && s.is_degenerate(g);
            let deviation = if s.is_unit_arrow(g) {
                (m - &RationalMatrix::identity(m.rows())).max_abs()
            } else if expected_zero {
                m.max_abs()
            } else {
                continue;
            };
            if !deviation.is_zero() {
                residuals.push(Residual {
                    kind: ViolationKind::Normalization,
                    k: s.arity(),
                    simplex: s.clone(),
                    degree: *n,
                    value: deviation,
                });
            }
        }
        for k in 0..=KMAX {
            let simplices = Simplex::all(g, k);
            let found: Vec<(usize, Vec<Residual>)> = simplices
                .par_iter()
                .map(|s| {
                    let mut local = Vec::new();
                    let mut count = 0;
                    for n in self.fibers[s.source(g)].degrees() {
                        let target_dim = self.fibers[s.target(g)].dim(n + 2 - k as i32);
                        if target_dim == 0 {
                            continue;
                        }
                        count += 1;
                        let r = self.identity_residual(s, n).max_abs();
                        if !r.is_zero() {
                            local.push(Residual {
                                kind: ViolationKind::Identity,
                                k,
                                simplex: s.clone(),
                                degree: n,
                                value: r,
                            });
                        }
                    }
                    (count, local)
                })
                .collect();
            for (c, r) in found {
                checked += c;
                residuals.extend(r);
            }
        }
        RuthReport::from_residuals(g, checked, residuals)
    }

    /// Left side minus right side of the coherence identity at `s`, source degree `n`.
    pub fn identity_residual(&self, s: &Simplex, n: i32) -> RationalMatrix {
        let g = &*self.groupoid;
        let k = s.arity();
        let rows = self.fibers[s.target(g)].dim(n + 2 - k as i32);
        let cols = self.fibers[s.source(g)].dim(n);
        let mut acc = RationalMatrix::zeros(rows, cols);
        if let Simplex::Arrows(t) = s {
            for j in 1..k {
                let face = Simplex::Arrows(g.inner_face(t, j));
                if let Some(m) = self.op(&face, n) {
                    add_signed(&mut acc, sign(j), &m);
                }
            }
        }
        for j in 0..=k {
            let tail = s.tail(g, j);
            let Some(right) = self.op(&tail, n) else { continue };
            let mid = n + 1 - (k - j) as i32;
            let Some(left) = self.op(&s.head(g, j), mid) else { continue };
            add_signed(&mut acc, -sign(j), &(&*left * &*right));
        }
        acc
    }

    /// Fails with [`RuthError::NotTwoTerm`] unless every fiber lives in degrees −1 and 0.
    pub fn require_two_term(&self) -> Result<(), RuthError> {
        if self.fibers.iter().all(|f| f.degrees().all(|n| n == -1 || n == 0)) {
            Ok(())
        } else {
            Err(RuthError::NotTwoTerm)
        }
    }

    /// Two-term view: the core-to-base differential `δ_x : C_x → V_x`.
    pub fn core_differential(&self, x: ObjId) -> RationalMatrix {
        self.op_matrix(&Simplex::Object(x), -1)
    }

    /// Two-term view: the quasi-action on the core, `Δ^C_g : C_{s(g)} → C_{t(g)}`.
    pub fn core_action(&self, g: ArrowId) -> RationalMatrix {
        self.op_matrix(&Simplex::Arrows(vec![g]), -1)
    }

    /// Two-term view: the quasi-action on the base, `Δ^V_g : V_{s(g)} → V_{t(g)}`.
    pub fn base_action(&self, g: ArrowId) -> RationalMatrix {
        self.op_matrix(&Simplex::Arrows(vec![g]), 0)
    }

    /// Two-term view: the curvature term `Ω_{g1,g2} : V_{s(g2)} → C_{t(g1)}`.
    ///
    /// With the coherence identities written as above this is `−R_2(g1, g2)`,
    /// which makes the two-term identities read `Δ^C_{g1} Δ^C_{g2} − Δ^C_{g1 g2} + Ω δ = 0`.
    pub fn curvature_term(&self, g1: ArrowId, g2: ArrowId) -> RationalMatrix {
        -&self.op_matrix(&Simplex::Arrows(vec![g1, g2]), 0)
    }
}

fn sign(j: usize) -> i64 {
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

fn add_signed(acc: &mut RationalMatrix, s: i64, m: &RationalMatrix) {
    *acc = if s > 0 { &*acc + m } else { &*acc - m };
}

/// Morphism `Φ : W → V` with components `Φ_k(g_1..g_k) : W^n_{s(g_k)} → V^{n−k}_{t(g_1)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuthMorphismData {
    source: RuthData,
    target: RuthData,
    comps: OpTable,
}

impl RuthMorphismData {
    pub fn new(source: RuthData, target: RuthData) -> Result<Self, RuthError> {
        if source.groupoid != target.groupoid {
            return Err(RuthError::GroupoidMismatch);
        }
        Ok(Self { source, target, comps: BTreeMap::new() })
    }

    /// `Φ_0 = id`, nothing else.
    pub fn identity(r: &RuthData) -> Self {
        let mut m = Self { source: r.clone(), target: r.clone(), comps: BTreeMap::new() };
        for x in 0..r.groupoid.object_count() {
            for n in r.fibers[x].degrees() {
                m.comps.insert(
                    (Simplex::Object(x), n),
                    RationalMatrix::identity(r.fibers[x].dim(n)),
                );
            }
        }
        m
    }

    pub fn source(&self) -> &RuthData {
        &self.source
    }

    pub fn target(&self) -> &RuthData {
        &self.target
    }

    pub fn stored_components(&self) -> &BTreeMap<(Simplex, i32), RationalMatrix> {
        &self.comps
    }

    pub fn component_shape(&self, s: &Simplex, degree: i32) -> (usize, usize) {
        let g = &self.source.groupoid;
        (
            self.target.fibers[s.target(g)].dim(degree - s.arity() as i32),
            self.source.fibers[s.source(g)].dim(degree),
        )
    }

    pub fn set_component(&mut self, s: Simplex, degree: i32, m: RationalMatrix) -> Result<(), RuthError> {
        let g = &self.source.groupoid;
        if let Simplex::Arrows(t) = &s {
            if t.is_empty() || !g.is_composable(t) {
                return Err(RuthError::NotComposable { simplex: format!("{t:?}") });
            }
        }
        let expected = self.component_shape(&s, degree);
        if m.shape() != expected {
            return Err(RuthError::DimensionMismatch {
                simplex: s.describe(g),
                degree,
                expected,
                found: m.shape(),
            });
        }
        self.comps.insert((s, degree), m);
        Ok(())
    }

    pub fn with_component(mut self, s: Simplex, degree: i32, m: RationalMatrix) -> Result<Self, RuthError> {
        self.set_component(s, degree, m)?;
        Ok(self)
    }

    pub fn component(&self, s: &Simplex, degree: i32) -> Option<&RationalMatrix> {
        self.comps.get(&(s.clone(), degree))
    }

    pub fn component_matrix(&self, s: &Simplex, degree: i32) -> RationalMatrix {
        match self.component(s, degree) {
            Some(m) => m.clone(),
            None => {
                let (r, c) = self.component_shape(s, degree);
                RationalMatrix::zeros(r, c)
            }
        }
    }

    /// Checks normalization and the morphism identities for `k ≤ KMAX`.
    pub fn verify(&self) -> RuthReport {
        let g = &*self.source.groupoid;
        let mut residuals = Vec::new();
        let mut checked = 0;
        for ((s, n), m) in &self.comps {
            if s.arity() > 0 && s.is_degenerate(g) && !m.is_zero() {
                residuals.push(Residual {
                    kind: ViolationKind::Normalization,
                    k: s.arity(),
                    simplex: s.clone(),
                    degree: *n,
                    value: m.max_abs(),
                });
            }
        }
        for k in 0..=KMAX {
            let simplices = Simplex::all(g, k);
            let found: Vec<(usize, Vec<Residual>)> = simplices
                .par_iter()
                .map(|s| {
                    let mut local = Vec::new();
                    let mut count = 0;
                    for n in self.source.fibers[s.source(g)].degrees() {
                        if self.target.fibers[s.target(g)].dim(n + 1 - k as i32) == 0 {
                            continue;
                        }
                        count += 1;
                        let r = self.identity_residual(s, n).max_abs();
                        if !r.is_zero() {
                            local.push(Residual {
                                kind: ViolationKind::Identity,
                                k,
                                simplex: s.clone(),
                                degree: n,
                                value: r,
                            });
                        }
                    }
                    (count, local)
                })
                .collect();
            for (c, r) in found {
                checked += c;
                residuals.extend(r);
            }
        }
        RuthReport::from_residuals(g, checked, residuals)
    }

    /// Left minus right side of the morphism identity at `s`, source degree `n`:
    ///
    /// ```text
    /// Σ_j (−1)^j Φ_j R_{k−j} − Σ_j R'_j Φ_{k−j} − Σ_{j=1}^{k−1} (−1)^j Φ_{k−1}(…, g_j g_{j+1}, …)
    /// ```
    pub fn identity_residual(&self, s: &Simplex, n: i32) -> RationalMatrix {
        let g = &*self.source.groupoid;
        let k = s.arity();
        let rows = self.target.fibers[s.target(g)].dim(n + 1 - k as i32);
        let cols = self.source.fibers[s.source(g)].dim(n);
        let mut acc = RationalMatrix::zeros(rows, cols);
        for j in 0..=k {
            let (head, tail) = (s.head(g, j), s.tail(g, j));
            if let Some(r) = self.source.op(&tail, n) {
                let mid = n + 1 - (k - j) as i32;
                if let Some(phi) = self.component(&head, mid) {
                    add_signed(&mut acc, sign(j), &(phi * &*r));
                }
            }
            if let Some(phi) = self.component(&tail, n) {
                let mid = n - (k - j) as i32;
                if let Some(r) = self.target.op(&head, mid) {
                    add_signed(&mut acc, -1, &(&*r * phi));
                }
            }
        }
        if let Simplex::Arrows(t) = s {
            for j in 1..k {
                let face = Simplex::Arrows(g.inner_face(t, j));
                if let Some(phi) = self.component(&face, n) {
                    add_signed(&mut acc, -sign(j), phi);
                }
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests;

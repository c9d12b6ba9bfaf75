//! Bounded cochain complexes over ℚ, cochain maps, homotopies and mapping cones.
//!
//! Degrees are `i32` and may be negative. Anything outside the stored support
//! is the zero space, and a missing differential or component is the zero map.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactq::{Rational, RationalMatrix, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomalgError {
    #[error("{what} in degree {degree}: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        what: &'static str,
        degree: i32,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("d∘d is nonzero starting in degree {degree}")]
    NotAComplex { degree: i32 },
    #[error("cochain condition fails in degree {degree}")]
    NotACochainMap { degree: i32 },
    #[error("operation needs a degree-preserving map, found shift {shift}")]
    NonzeroShift { shift: i32 },
    #[error("homotopy endpoints do not share source and target")]
    EndpointMismatch,
}

/// Finite-dimensional graded vector space, stored as degree → dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    dims: BTreeMap<i32, usize>,
}

impl GradedSpace {
    pub fn new(dims: impl IntoIterator<Item = (i32, usize)>) -> Self {
        Self {
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
        }
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    /// Degrees carrying a nonzero space, in increasing order.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.dims.keys().copied()
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    /// Smallest and largest degree with a nonzero space.
    pub fn support(&self) -> Option<(i32, i32)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&n, &d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Degreewise dual: the dual space sits in degree `-n`.
    pub fn dual(&self) -> Self {
        Self::new(self.dims.iter().map(|(&n, &d)| (-n, d)))
    }

    /// The space shifted so that degree `n` of the result is degree `n - by` of `self`.
    pub fn shifted(&self, by: i32) -> Self {
        Self::new(self.dims.iter().map(|(&n, &d)| (n + by, d)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    space: GradedSpace,
    d: BTreeMap<i32, RationalMatrix>,
}

impl CochainComplex {
    /// Stores the data as given; call [`CochainComplex::validate`] before trusting it.
    pub fn new(space: GradedSpace, differentials: BTreeMap<i32, RationalMatrix>) -> Self {
        Self { space, d: differentials }
    }

    /// Convenience constructor for a complex occupying consecutive degrees
    /// `start, start + 1, ...` with the given differentials between them.
    pub fn from_sequence(start: i32, dims: &[usize], maps: &[RationalMatrix]) -> Self {
        let space = GradedSpace::new(dims.iter().enumerate().map(|(i, &d)| (start + i as i32, d)));
        let d = maps.iter().enumerate().map(|(i, m)| (start + i as i32, m.clone())).collect();
        Self::new(space, d)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.space.dim(degree)
    }

    /// `d_n : C^n → C^{n+1}`, a zero matrix of the right shape when not stored.
    pub fn differential(&self, degree: i32) -> RationalMatrix {
        match self.d.get(&degree) {
            Some(m) => m.clone(),
            None => RationalMatrix::zeros(self.dim(degree + 1), self.dim(degree)),
        }
    }

    pub fn stored_differentials(&self) -> &BTreeMap<i32, RationalMatrix> {
        &self.d
    }

    /// Degrees from the lowest to the highest nonzero space, inclusive.
    pub fn degree_range(&self) -> Vec<i32> {
        match self.space.support() {
            Some((lo, hi)) => (lo..=hi).collect(),
            None => Vec::new(),
        }
    }

    /// Checks differential shapes and `d_{n+1} d_n = 0`; reports the first failing degree.
    pub fn validate(&self) -> Result<(), HomalgError> {
        for (&n, m) in &self.d {
            let expected = (self.dim(n + 1), self.dim(n));
            if m.shape() != expected {
                return Err(HomalgError::DimensionMismatch {
                    what: "differential",
                    degree: n,
                    expected,
                    found: m.shape(),
                });
            }
        }
        for (&n, m) in &self.d {
            if let Some(next) = self.d.get(&(n + 1)) {
                if !(next * m).is_zero() {
                    return Err(HomalgError::NotAComplex { degree: n });
                }
            }
        }
        Ok(())
    }

    /// `dim H^n = dim ker d_n − rank d_{n−1}` for every degree in the support range.
    pub fn cohomology_dims(&self) -> Result<BTreeMap<i32, usize>, HomalgError> {
        self.validate()?;
        Ok(self
            .degree_range()
            .into_iter()
            .map(|n| {
                let kernel = self.dim(n) - self.differential(n).rank();
                (n, kernel - self.differential(n - 1).rank())
            })
            .collect())
    }

    pub fn is_acyclic(&self) -> Result<bool, HomalgError> {
        Ok(self.cohomology_dims()?.values().all(|&h| h == 0))
    }

    /// Basis of `Z^n` together with a list of cocycles whose classes form a basis of `H^n`.
    fn cohomology_representatives(&self, n: i32) -> (Vec<Vector>, Vec<Vector>) {
        let boundaries = self.differential(n - 1).image_basis();
        let mut reps = Vec::new();
        let mut current = boundaries.clone();
        let mut rank = current.len();
        for z in self.differential(n).kernel_basis() {
            current.push(z.clone());
            let r = RationalMatrix::from_columns(self.dim(n), &current).rank();
            if r > rank {
                rank = r;
                reps.push(z);
            } else {
                current.pop();
            }
        }
        (boundaries, reps)
    }

    pub fn identity_map(&self) -> CochainMap {
        let components = self
            .space
            .degrees()
            .map(|n| (n, RationalMatrix::identity(self.dim(n))))
            .collect();
        CochainMap::new(self.clone(), self.clone(), components)
    }

    pub fn zero_map_to(&self, target: &CochainComplex) -> CochainMap {
        CochainMap::new(self.clone(), target.clone(), BTreeMap::new())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainMap {
    source: CochainComplex,
    target: CochainComplex,
    components: BTreeMap<i32, RationalMatrix>,
    shift: i32,
}

impl CochainMap {
    /// A degree-preserving map.
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        components: BTreeMap<i32, RationalMatrix>,
    ) -> Self {
        Self::with_shift(source, target, components, 0)
    }

    /// A map sending degree `n` to degree `n + shift`.
    pub fn with_shift(
        source: CochainComplex,
        target: CochainComplex,
        components: BTreeMap<i32, RationalMatrix>,
        shift: i32,
    ) -> Self {
        Self { source, target, components, shift }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn stored_components(&self) -> &BTreeMap<i32, RationalMatrix> {
        &self.components
    }

    /// `f_n : source^n → target^{n+shift}`, zero when not stored.
    pub fn component(&self, degree: i32) -> RationalMatrix {
        match self.components.get(&degree) {
            Some(m) => m.clone(),
            None => RationalMatrix::zeros(
                self.target.dim(degree + self.shift),
                self.source.dim(degree),
            ),
        }
    }

    fn check_shapes(&self) -> Result<(), HomalgError> {
        for (&n, m) in &self.components {
            let expected = (self.target.dim(n + self.shift), self.source.dim(n));
            if m.shape() != expected {
                return Err(HomalgError::DimensionMismatch {
                    what: "map component",
                    degree: n,
                    expected,
                    found: m.shape(),
                });
            }
        }
        Ok(())
    }

    /// Validates both complexes, component shapes, and `d f = f d` for shift 0.
    pub fn validate(&self) -> Result<(), HomalgError> {
        self.source.validate()?;
        self.target.validate()?;
        self.check_shapes()?;
        if self.shift != 0 {
            return Err(HomalgError::NonzeroShift { shift: self.shift });
        }
        for n in degrees_of(&[&self.source, &self.target], 0) {
            let lhs = &self.target.differential(n) * &self.component(n);
            let rhs = &self.component(n + 1) * &self.source.differential(n);
            if lhs != rhs {
                return Err(HomalgError::NotACochainMap { degree: n });
            }
        }
        Ok(())
    }

    /// Cone with `C^n = source^n ⊕ target^{n−1}` and `δ(v, w) = (−d v, f v + d w)`.
    pub fn mapping_cone(&self) -> Result<CochainComplex, HomalgError> {
        self.validate()?;
        let (v, w) = (&self.source, &self.target);
        let shifted_target = w.space.shifted(1);
        let degrees = degrees_of_spaces(&[&v.space, &shifted_target], 1);
        let space = GradedSpace::new(degrees.iter().map(|&n| (n, v.dim(n) + w.dim(n - 1))));
        let d = degrees
            .iter()
            .map(|&n| {
                let top = RationalMatrix::hstack(&[
                    &-&v.differential(n),
                    &RationalMatrix::zeros(v.dim(n + 1), w.dim(n - 1)),
                ]);
                let bottom = RationalMatrix::hstack(&[&self.component(n), &w.differential(n - 1)]);
                (n, RationalMatrix::vstack(&[&top, &bottom]))
            })
            .collect();
        Ok(CochainComplex::new(space, d))
    }

    /// Quasi-isomorphism test: the mapping cone is acyclic.
    pub fn is_quasi_iso(&self) -> Result<bool, HomalgError> {
        self.mapping_cone()?.is_acyclic()
    }

    /// Matrix of `H^n(f)` in bases of cohomology classes chosen by elimination.
    pub fn induced_on_cohomology(&self, degree: i32) -> Result<RationalMatrix, HomalgError> {
        self.validate()?;
        let (_, reps) = self.source.cohomology_representatives(degree);
        let (boundaries, target_reps) = self.target.cohomology_representatives(degree);
        let dim = self.target.dim(degree);
        let mut basis = boundaries.clone();
        basis.extend(target_reps.iter().cloned());
        let solver = RationalMatrix::from_columns(dim, &basis);
        let f = self.component(degree);
        let columns: Vec<Vector> = reps
            .iter()
            .map(|z| {
                let coords = solver
                    .solve(&f.mul_vec(z))
                    .expect("a cochain map sends cocycles to cocycles");
                coords[boundaries.len()..].to_vec()
            })
            .collect();
        Ok(RationalMatrix::from_columns(target_reps.len(), &columns))
    }

    /// Per-degree bijectivity of the induced maps on cohomology.
    pub fn induced_isomorphisms(&self) -> Result<BTreeMap<i32, bool>, HomalgError> {
        let mut out = BTreeMap::new();
        for n in degrees_of(&[&self.source, &self.target], 0) {
            let m = self.induced_on_cohomology(n)?;
            out.insert(n, m.rows() == m.cols() && m.rank() == m.rows());
        }
        Ok(out)
    }

    /// Quasi-isomorphism test through induced maps on cohomology. Independent of
    /// the cone; [`CochainMap::is_quasi_iso`] is the reference.
    pub fn is_quasi_iso_by_induced_maps(&self) -> Result<bool, HomalgError> {
        Ok(self.induced_isomorphisms()?.values().all(|&b| b))
    }
}

/// Result of checking `f − g = d h + h d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyReport {
    pub valid: bool,
    /// Degrees where the identity fails, in increasing order.
    pub violations: Vec<i32>,
    /// Degree with the largest residual entry, if any identity fails.
    pub worst_degree: Option<i32>,
    pub residual: Rational,
}

/// Components `h_n : source^n → target^{n−1}` between two parallel cochain maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy {
    f: CochainMap,
    g: CochainMap,
    components: BTreeMap<i32, RationalMatrix>,
}

impl Homotopy {
    pub fn new(f: CochainMap, g: CochainMap, components: BTreeMap<i32, RationalMatrix>) -> Self {
        Self { f, g, components }
    }

    pub fn endpoints(&self) -> (&CochainMap, &CochainMap) {
        (&self.f, &self.g)
    }

    pub fn component(&self, degree: i32) -> RationalMatrix {
        match self.components.get(&degree) {
            Some(m) => m.clone(),
            None => RationalMatrix::zeros(self.f.target.dim(degree - 1), self.f.source.dim(degree)),
        }
    }

    pub fn verify(&self) -> Result<HomotopyReport, HomalgError> {
        if self.f.source != self.g.source || self.f.target != self.g.target {
            return Err(HomalgError::EndpointMismatch);
        }
        self.f.check_shapes()?;
        self.g.check_shapes()?;
        let (src, tgt) = (&self.f.source, &self.f.target);
        for (&n, m) in &self.components {
            let expected = (tgt.dim(n - 1), src.dim(n));
            if m.shape() != expected {
                return Err(HomalgError::DimensionMismatch {
                    what: "homotopy component",
                    degree: n,
                    expected,
                    found: m.shape(),
                });
            }
        }
        let mut report = HomotopyReport {
            valid: true,
            violations: Vec::new(),
            worst_degree: None,
            residual: Rational::zero(),
        };
        for n in degrees_of(&[src, tgt], 1) {
            let diff = &self.f.component(n) - &self.g.component(n);
            let dh = &tgt.differential(n - 1) * &self.component(n);
            let hd = &self.component(n + 1) * &src.differential(n);
            let r = (&diff - &(&dh + &hd)).max_abs();
            if !r.is_zero() {
                report.valid = false;
                report.violations.push(n);
                if r > report.residual {
                    report.residual = r;
                    report.worst_degree = Some(n);
                }
            }
        }
        Ok(report)
    }
}

/// All degrees touched by the given complexes, widened by `pad` on both ends.
fn degrees_of(complexes: &[&CochainComplex], pad: i32) -> Vec<i32> {
    let spaces: Vec<&GradedSpace> = complexes.iter().map(|c| &c.space).collect();
    degrees_of_spaces(&spaces, pad)
}

fn degrees_of_spaces(spaces: &[&GradedSpace], pad: i32) -> Vec<i32> {
    let mut lo = i32::MAX;
    let mut hi = i32::MIN;
    for s in spaces {
        if let Some((a, b)) = s.support() {
            lo = lo.min(a);
            hi = hi.max(b);
        }
    }
    if lo > hi {
        return Vec::new();
    }
    (lo - pad..=hi + pad).collect()
}

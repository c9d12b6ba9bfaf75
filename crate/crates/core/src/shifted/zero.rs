//! The 0-shifted case: a basic form `θ : TM → L` at one point.

use std::collections::BTreeMap;

use crate::exactq::{same_span, RationalMatrix};
use crate::homalg::{CochainComplex, CochainMap, Homotopy};

use super::{block_permutation, expect_shape, ShiftedError, Verdict};

/// Data of a 0-shifted form at a point, with `L` framed to ℚ.
///
/// `form_differential` is the matrix of the bilinear form `dθ(e_i, e_j)` in
/// the chosen basis of `TM`; the linear map `v ↦ dθ(v, ·)` is its transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroShiftedFiber {
    pub dim_a: usize,
    pub dim_tm: usize,
    /// Anchor `A → TM`, `dim_tm × dim_a`.
    pub anchor: RationalMatrix,
    /// The form `TM → L`, `1 × dim_tm`.
    pub form: RationalMatrix,
    /// Curvature of the chosen connection evaluated on `A`, `1 × dim_a`.
    pub curvature: RationalMatrix,
    /// Covariant differential of the form, antisymmetric `dim_tm × dim_tm`.
    pub form_differential: RationalMatrix,
}

/// Result of comparing the contact route with the Atiyah-form route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtiyahReport {
    /// Matrix of the antisymmetric form on `TM ⊕ ℝ`.
    pub omega: RationalMatrix,
    /// The map `A → TM ⊕ ℝ`, `a ↦ (ρ a, F a)`.
    pub extended_anchor: RationalMatrix,
    pub passes: bool,
    /// `ker ω = im 𝒟`; only evaluated when the check passes.
    pub kernel_matches_image: Option<bool>,
}

impl ZeroShiftedFiber {
    /// The all-zero data with the given dimensions.
    pub fn zero(dim_a: usize, dim_tm: usize) -> Self {
        Self {
            dim_a,
            dim_tm,
            anchor: RationalMatrix::zeros(dim_tm, dim_a),
            form: RationalMatrix::zeros(1, dim_tm),
            curvature: RationalMatrix::zeros(1, dim_a),
            form_differential: RationalMatrix::zeros(dim_tm, dim_tm),
        }
    }

    fn check_shapes(&self) -> Result<(), ShiftedError> {
        expect_shape("rho", &self.anchor, (self.dim_tm, self.dim_a))?;
        expect_shape("theta", &self.form, (1, self.dim_tm))?;
        expect_shape("Fnabla", &self.curvature, (1, self.dim_a))?;
        expect_shape("dtheta", &self.form_differential, (self.dim_tm, self.dim_tm))
    }

    fn check_form_kills_anchor(&self) -> Result<(), ShiftedError> {
        if (&self.form * &self.anchor).is_zero() {
            Ok(())
        } else {
            Err(ShiftedError::InvariantViolation("θ ∘ ρ ≠ 0"))
        }
    }

    /// Checks shapes, antisymmetry, `θ ρ = 0` and `dθ(ρ a, v) = −F(a) θ(v)`.
    pub fn validate(&self) -> Result<(), ShiftedError> {
        self.check_shapes()?;
        let d = &self.form_differential;
        if d != &-&d.transpose() {
            return Err(ShiftedError::InvariantViolation("dθ is not antisymmetric"));
        }
        self.check_form_kills_anchor()?;
        let lhs = &self.anchor.transpose() * d;
        let rhs = -&(&self.curvature.transpose() * &self.form);
        if lhs != rhs {
            return Err(ShiftedError::InvariantViolation("dθ(ρ a, v) ≠ −F(a) θ(v)"));
        }
        Ok(())
    }

    /// `0 → A →ρ TM →θ L → 0` in degrees −1, 0, 1.
    pub fn kernel(&self) -> Result<CochainComplex, ShiftedError> {
        self.check_shapes()?;
        self.check_form_kills_anchor()?;
        Ok(CochainComplex::from_sequence(
            -1,
            &[self.dim_a, self.dim_tm, 1],
            &[self.anchor.clone(), self.form.clone()],
        ))
    }

    /// Twisted dual of the kernel, `0 → ℝ →θᵀ T*M →ρᵀ A* → 0` in degrees −1, 0, 1.
    pub fn dual_kernel(&self) -> Result<CochainComplex, ShiftedError> {
        self.check_shapes()?;
        Ok(CochainComplex::from_sequence(
            -1,
            &[1, self.dim_tm, self.dim_a],
            &[self.form.transpose(), self.anchor.transpose()],
        ))
    }

    /// The curvature map from the kernel to its twisted dual, with components
    /// `−F`, `v ↦ dθ(v, ·)` and `Fᵀ`.
    pub fn curvature_map(&self) -> Result<CochainMap, ShiftedError> {
        let source = self.kernel()?;
        let target = self.dual_kernel()?;
        let components = BTreeMap::from([
            (-1, -&self.curvature),
            (0, self.form_differential.transpose()),
            (1, self.curvature.transpose()),
        ]);
        let map = CochainMap::new(source, target, components);
        map.validate()?;
        Ok(map)
    }

    fn middle_matrix(&self) -> RationalMatrix {
        RationalMatrix::block(&[
            &[&self.form_differential.transpose(), &self.form.transpose()],
            &[&-&self.form, &RationalMatrix::zeros(1, 1)],
        ])
    }

    /// `0 → A → TM⊕ℝ → T*M⊕L → A* → 0` with maps `(−ρ, −F)`,
    /// `[[dθ, θᵀ], [−θ, 0]]` and `ρᵀ + Fᵀ`, in degrees −1..2.
    pub fn exact_sequence(&self) -> Result<CochainComplex, ShiftedError> {
        self.check_shapes()?;
        let first = RationalMatrix::vstack(&[&-&self.anchor, &-&self.curvature]);
        let last = RationalMatrix::hstack(&[&self.anchor.transpose(), &self.curvature.transpose()]);
        let n = self.dim_tm + 1;
        Ok(CochainComplex::from_sequence(
            -1,
            &[self.dim_a, n, n, self.dim_a],
            &[first, self.middle_matrix(), last],
        ))
    }

    /// Decides whether the curvature map is a quasi-isomorphism, by cone
    /// acyclicity and by exactness of [`Self::exact_sequence`].
    pub fn check(&self) -> Result<Verdict, ShiftedError> {
        self.validate()?;
        let cone = self.curvature_map()?.mapping_cone()?;
        let sequence = self.exact_sequence()?;
        // The cone orders the degree-1 term as L ⊕ T*M; the sequence as T*M ⊕ L.
        let p = block_permutation(&[("L", 1), ("T*M", self.dim_tm)], &["T*M", "L"]);
        let same = sequence.differential(-1) == cone.differential(-1)
            && sequence.differential(0) == &p * &cone.differential(0)
            && sequence.differential(1) == &cone.differential(1) * &p.transpose();
        if !same {
            return Err(ShiftedError::CrossCheckMismatch("cone and exact sequence matrices"));
        }
        let cone_cohomology = cone.cohomology_dims()?;
        let passes = cone_cohomology.values().all(|&h| h == 0);
        if passes != sequence.is_acyclic()? {
            return Err(ShiftedError::CrossCheckMismatch("cone and exact sequence verdicts"));
        }
        Ok(Verdict {
            passes,
            cone_cohomology,
            dimension_parity_ok: (self.dim_tm as i64 - self.dim_a as i64).rem_euclid(2) == 1,
        })
    }

    /// Matrix of `ω((v, r), (v', r')) = dθ(v, v') + r θ(v') − r' θ(v)` on `TM ⊕ ℝ`.
    pub fn atiyah_form(&self) -> RationalMatrix {
        let n = self.dim_tm;
        let d = &self.form_differential;
        let theta = |i: usize| self.form[(0, i)].clone();
        RationalMatrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
            (true, true) => d[(i, j)].clone(),
            (false, true) => theta(j),
            (true, false) => -theta(i),
            (false, false) => num_traits::Zero::zero(),
        })
    }

    /// Rebuilds the check from the antisymmetric form `ω` on `TM ⊕ ℝ` and the
    /// extended anchor, compares matrices with [`Self::check`], and checks
    /// `ker ω = im 𝒟` when the verdict passes.
    pub fn atiyah_cross_check(&self) -> Result<AtiyahReport, ShiftedError> {
        let verdict = self.check()?;
        let omega = self.atiyah_form();
        let extended_anchor = RationalMatrix::vstack(&[&self.anchor, &self.curvature]);
        let n = self.dim_tm + 1;
        let cone = CochainComplex::from_sequence(
            -1,
            &[self.dim_a, n, n, self.dim_a],
            &[-&extended_anchor, omega.transpose(), extended_anchor.transpose()],
        );
        let sequence = self.exact_sequence()?;
        if (-1..=1).any(|k| cone.differential(k) != sequence.differential(k)) {
            return Err(ShiftedError::CrossCheckMismatch("Atiyah cone and contact sequence"));
        }
        if cone.is_acyclic()? != verdict.passes {
            return Err(ShiftedError::CrossCheckMismatch("Atiyah and contact verdicts"));
        }
        let kernel_matches_image = verdict.passes.then(|| {
            same_span(n, &omega.kernel_basis(), &extended_anchor.image_basis())
        });
        if kernel_matches_image == Some(false) {
            return Err(ShiftedError::CrossCheckMismatch("ker ω differs from im 𝒟"));
        }
        Ok(AtiyahReport { omega, extended_anchor, passes: verdict.passes, kernel_matches_image })
    }

    /// Changes the connection by `alpha : TM → ℝ`. Returns the new data and a
    /// homotopy from the old curvature map to the new one.
    pub fn change_connection(
        &self,
        alpha: &RationalMatrix,
    ) -> Result<(ZeroShiftedFiber, Homotopy), ShiftedError> {
        self.validate()?;
        expect_shape("alpha", alpha, (1, self.dim_tm))?;
        let shift = &alpha.transpose() * &self.form;
        let changed = ZeroShiftedFiber {
            curvature: &self.curvature + &(alpha * &self.anchor),
            form_differential: &(&self.form_differential - &shift) + &shift.transpose(),
            ..self.clone()
        };
        let homotopy = Homotopy::new(
            self.curvature_map()?,
            changed.curvature_map()?,
            BTreeMap::from([(0, alpha.clone()), (1, -&alpha.transpose())]),
        );
        Ok((changed, homotopy))
    }
}

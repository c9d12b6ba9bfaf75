//! The +1-shifted case: a multiplicative form restricted to the unit fiber.

use std::collections::BTreeMap;

use crate::exactq::RationalMatrix;
use crate::homalg::{CochainComplex, CochainMap};

use super::{block_permutation, expect_shape, ShiftedError, Verdict};

/// Data of a +1-shifted form at a unit, with `L` framed to ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneShiftedFiber {
    pub dim_a: usize,
    pub dim_tm: usize,
    /// Anchor `A → TM`, `dim_tm × dim_a`.
    pub anchor: RationalMatrix,
    /// The form restricted to `A`, `1 × dim_a`.
    pub algebroid_form: RationalMatrix,
    /// The `A × TM` block of the covariant differential, `dim_a × dim_tm`;
    /// entry `(i, j)` is the value on `(a_i, v_j)`.
    pub mixed_differential: RationalMatrix,
    /// Connection term restricted to `A`, `1 × dim_a`.
    pub connection_form: RationalMatrix,
    /// The form evaluated on `TM` at the unit, `1 × dim_tm`; only needed for
    /// connection changes.
    pub base_form: Option<RationalMatrix>,
}

impl OneShiftedFiber {
    pub fn zero(dim_a: usize, dim_tm: usize) -> Self {
        Self {
            dim_a,
            dim_tm,
            anchor: RationalMatrix::zeros(dim_tm, dim_a),
            algebroid_form: RationalMatrix::zeros(1, dim_a),
            mixed_differential: RationalMatrix::zeros(dim_a, dim_tm),
            connection_form: RationalMatrix::zeros(1, dim_a),
            base_form: None,
        }
    }

    fn check_shapes(&self) -> Result<(), ShiftedError> {
        expect_shape("rho", &self.anchor, (self.dim_tm, self.dim_a))?;
        expect_shape("ellTheta", &self.algebroid_form, (1, self.dim_a))?;
        expect_shape("B", &self.mixed_differential, (self.dim_a, self.dim_tm))?;
        expect_shape("e", &self.connection_form, (1, self.dim_a))?;
        if let Some(t) = &self.base_form {
            expect_shape("thetaOnTM", t, (1, self.dim_tm))?;
        }
        Ok(())
    }

    /// Checks shapes, the commuting square `Bρ + (Bρ)ᵀ = ℓᵀe + eᵀℓ`, and
    /// `θ|_TM ∘ ρ = 0` when the base form is present.
    pub fn validate(&self) -> Result<(), ShiftedError> {
        self.check_shapes()?;
        let b_rho = &self.mixed_differential * &self.anchor;
        let l_e = &self.algebroid_form.transpose() * &self.connection_form;
        if &b_rho + &b_rho.transpose() != &l_e + &l_e.transpose() {
            return Err(ShiftedError::InvariantViolation("curvature square does not commute"));
        }
        if let Some(t) = &self.base_form {
            if !(t * &self.anchor).is_zero() {
                return Err(ShiftedError::InvariantViolation("θ|_TM ∘ ρ ≠ 0"));
            }
        }
        Ok(())
    }

    fn stacked_anchor(&self) -> RationalMatrix {
        RationalMatrix::vstack(&[&self.anchor, &self.algebroid_form])
    }

    /// `0 → A →(ρ, ℓ) TM ⊕ L → 0` in degrees −1, 0.
    pub fn kernel(&self) -> Result<CochainComplex, ShiftedError> {
        self.check_shapes()?;
        Ok(CochainComplex::from_sequence(
            -1,
            &[self.dim_a, self.dim_tm + 1],
            &[self.stacked_anchor()],
        ))
    }

    /// Twisted dual of the kernel shifted into degrees −1, 0:
    /// `0 → T*M ⊕ ℝ →(ρᵀ + ℓᵀ) A* → 0`.
    pub fn dual_kernel(&self) -> Result<CochainComplex, ShiftedError> {
        self.check_shapes()?;
        Ok(CochainComplex::from_sequence(
            -1,
            &[self.dim_tm + 1, self.dim_a],
            &[self.stacked_anchor().transpose()],
        ))
    }

    /// Curvature map `a ↦ (B(a, ·), −e(a))` in degree −1 and
    /// `(v, λ) ↦ −B(·, v) + λ e` in degree 0.
    pub fn curvature_map(&self) -> Result<CochainMap, ShiftedError> {
        let source = self.kernel()?;
        let target = self.dual_kernel()?;
        let low = RationalMatrix::vstack(&[
            &self.mixed_differential.transpose(),
            &-&self.connection_form,
        ]);
        let high = RationalMatrix::hstack(&[
            &-&self.mixed_differential,
            &self.connection_form.transpose(),
        ]);
        if high != -&low.transpose() {
            return Err(ShiftedError::CrossCheckMismatch("degree-0 component is not −(degree −1)ᵀ"));
        }
        let map = CochainMap::new(source, target, BTreeMap::from([(-1, low), (0, high)]));
        map.validate()?;
        Ok(map)
    }

    /// `0 → A → TM⊕ℝ⊕T*M⊕L → A* → 0` with maps `(−ρ, −e, Bᵀ, −ℓ)` and
    /// `[−B | ℓᵀ | ρᵀ | eᵀ]`, in degrees −1..1.
    pub fn exact_sequence(&self) -> Result<CochainComplex, ShiftedError> {
        self.check_shapes()?;
        let b = &self.mixed_differential;
        let first = RationalMatrix::vstack(&[
            &-&self.anchor,
            &-&self.connection_form,
            &b.transpose(),
            &-&self.algebroid_form,
        ]);
        let second = RationalMatrix::hstack(&[
            &-b,
            &self.algebroid_form.transpose(),
            &self.anchor.transpose(),
            &self.connection_form.transpose(),
        ]);
        let mid = 2 * self.dim_tm + 2;
        Ok(CochainComplex::from_sequence(-1, &[self.dim_a, mid, self.dim_a], &[first, second]))
    }

    /// Decides whether the curvature map is a quasi-isomorphism. Also checks
    /// that bijectivity in degree −1 and in degree 0 agree.
    pub fn check(&self) -> Result<Verdict, ShiftedError> {
        self.validate()?;
        let map = self.curvature_map()?;
        let cone = map.mapping_cone()?;
        let sequence = self.exact_sequence()?;
        let n = self.dim_tm;
        // Cone middle term is (TM ⊕ L) ⊕ (T*M ⊕ ℝ); the sequence uses TM, ℝ, T*M, L.
        let p = block_permutation(
            &[("TM", n), ("L", 1), ("T*M", n), ("R", 1)],
            &["TM", "R", "T*M", "L"],
        );
        let same = sequence.differential(-1) == &p * &cone.differential(-1)
            && sequence.differential(0) == &cone.differential(0) * &p.transpose();
        if !same {
            return Err(ShiftedError::CrossCheckMismatch("cone and exact sequence matrices"));
        }
        let cone_cohomology = cone.cohomology_dims()?;
        let passes = cone_cohomology.values().all(|&h| h == 0);
        if passes != sequence.is_acyclic()? {
            return Err(ShiftedError::CrossCheckMismatch("cone and exact sequence verdicts"));
        }
        let induced = map.induced_isomorphisms()?;
        let low = induced.get(&-1).copied().unwrap_or(true);
        let high = induced.get(&0).copied().unwrap_or(true);
        if low != high || low != passes {
            return Err(ShiftedError::CrossCheckMismatch("degree −1 and degree 0 verdicts"));
        }
        Ok(Verdict {
            passes,
            cone_cohomology,
            dimension_parity_ok: self.dim_a == self.dim_tm + 1,
        })
    }

    /// Gauge change of the form by an exact term with potential `alpha : TM → ℝ`:
    /// `ℓ′ = ℓ + αρ` and `B′ = B + eᵀα`.
    pub fn gauge(&self, alpha: &RationalMatrix) -> Result<OneShiftedFiber, ShiftedError> {
        self.check_shapes()?;
        expect_shape("alpha", alpha, (1, self.dim_tm))?;
        Ok(OneShiftedFiber {
            algebroid_form: &self.algebroid_form + &(alpha * &self.anchor),
            mixed_differential: &self.mixed_differential
                + &(&self.connection_form.transpose() * alpha),
            ..self.clone()
        })
    }

    /// Changes the connection by `alpha : TM → ℝ`:
    /// `e′ = e + αρ` and `B′(a, v) = B(a, v) − α(ρ a) θ(v) + α(v) ℓ(a)`.
    pub fn change_connection(&self, alpha: &RationalMatrix) -> Result<OneShiftedFiber, ShiftedError> {
        self.check_shapes()?;
        expect_shape("alpha", alpha, (1, self.dim_tm))?;
        let theta = self.base_form.as_ref().ok_or(ShiftedError::MissingThetaOnTM)?;
        let alpha_rho = alpha * &self.anchor;
        let mixed = &(&self.mixed_differential - &(&alpha_rho.transpose() * theta))
            + &(&self.algebroid_form.transpose() * alpha);
        Ok(OneShiftedFiber {
            connection_form: &self.connection_form + &alpha_rho,
            mixed_differential: mixed,
            ..self.clone()
        })
    }
}

//! Dual, tensor, twisted dual and mapping cone of representations up to homotopy.

use std::collections::BTreeSet;

use num_traits::One;

use super::{RuthData, RuthError, RuthMorphismData, Simplex};
use crate::exactq::{int, Rational, RationalMatrix};
use crate::homalg::GradedSpace;

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Dual representation: `(V*)^i = (V^{−i})*` and
/// `R*_k(g_1..g_k) = (−1)^{k+1} R_k(g_k⁻¹..g_1⁻¹)ᵀ`.
pub fn dual_ruth(r: &RuthData) -> RuthData {
    let g = &r.groupoid;
    let mut out = RuthData::uniform(g.clone(), GradedSpace::default());
    out.fibers = r.fibers.iter().map(GradedSpace::dual).collect();
    for ((s, n), m) in &r.ops {
        let k = s.arity();
        let key = (s.reversed_inverses(g), k as i32 - 1 - n);
        out.ops.insert(key, m.transpose().scale(&sign(k + 1)));
    }
    out
}

fn require_strict(rep: &RuthData) -> Result<(), RuthError> {
    for (x, f) in rep.fibers.iter().enumerate() {
        if f.degrees().any(|n| n != 0) {
            return Err(RuthError::NotAStrictRepresentation(format!(
                "fiber at {} is not concentrated in degree 0",
                rep.groupoid.object_name(x)
            )));
        }
    }
    if let Some(((s, _), _)) = rep.ops.iter().find(|((s, _), _)| s.arity() != 1) {
        return Err(RuthError::NotAStrictRepresentation(format!(
            "stores an operator at {}",
            s.describe(&rep.groupoid)
        )));
    }
    if !rep.verify().passes {
        return Err(RuthError::NotAStrictRepresentation("the action is not functorial".into()));
    }
    Ok(())
}

/// Tensor product with a strict representation `E`:
/// `R_k ⊗ E(g_1 ⋯ g_k)`, with the identity of `E_x` for `k = 0`.
pub fn tensor_ruth(r: &RuthData, rep: &RuthData) -> Result<RuthData, RuthError> {
    if r.groupoid != rep.groupoid {
        return Err(RuthError::GroupoidMismatch);
    }
    require_strict(rep)?;
    let g = &r.groupoid;
    let mut out = RuthData::uniform(g.clone(), GradedSpace::default());
    out.fibers = r
        .fibers
        .iter()
        .zip(&rep.fibers)
        .map(|(v, e)| GradedSpace::new(v.degrees().map(|n| (n, v.dim(n) * e.dim(0)))))
        .collect();
    for ((s, n), m) in &r.ops {
        let action = rep.op_matrix(&Simplex::Arrows(vec![s.product(g)]), 0);
        out.ops.insert((s.clone(), *n), m.kron(&action));
    }
    Ok(out)
}

fn require_line(line: &RuthData) -> Result<(), RuthError> {
    require_strict(line)?;
    for (x, f) in line.fibers.iter().enumerate() {
        if f.dim(0) != 1 {
            return Err(RuthError::NotALineRepresentation(format!(
                "fiber at {} has dimension {}",
                line.groupoid.object_name(x),
                f.dim(0)
            )));
        }
    }
    Ok(())
}

/// Twisted dual straight from the closed formula
/// `R†_k(g)ψ = (−1)^{k+1} (g_1 ⋯ g_k)·ψ ∘ R_k(g_k⁻¹..g_1⁻¹)`.
pub fn twisted_dual_direct(r: &RuthData, line: &RuthData) -> Result<RuthData, RuthError> {
    if r.groupoid != line.groupoid {
        return Err(RuthError::GroupoidMismatch);
    }
    require_line(line)?;
    let g = &r.groupoid;
    let mut out = RuthData::uniform(g.clone(), GradedSpace::default());
    out.fibers = r.fibers.iter().map(GradedSpace::dual).collect();
    for ((s, n), m) in &r.ops {
        let k = s.arity();
        let flipped = s.reversed_inverses(g);
        let lambda = line.op_matrix(&Simplex::Arrows(vec![flipped.product(g)]), 0)[(0, 0)].clone();
        let key = (flipped, k as i32 - 1 - n);
        out.ops.insert(key, m.transpose().scale(&(sign(k + 1) * lambda)));
    }
    Ok(out)
}

/// Twisted dual `V* ⊗ L`, built as a tensor of the dual and cross-checked
/// entrywise against [`twisted_dual_direct`].
pub fn twisted_dual_ruth(r: &RuthData, line: &RuthData) -> Result<RuthData, RuthError> {
    require_line(line)?;
    let composite = tensor_ruth(&dual_ruth(r), line)?;
    let direct = twisted_dual_direct(r, line)?;
    if let Some((s, n)) = composite.first_difference(&direct) {
        return Err(RuthError::CrossCheckMismatch { simplex: s.describe(&r.groupoid), degree: n });
    }
    Ok(composite)
}

/// Mapping cone of `Φ : V → W` on `C^n = V^n ⊕ W^{n−1}`:
/// `R_k(v, w) = (R_k^V v, Φ_k v − (−1)^k R_k^W w)`.
pub fn cone_ruth(m: &RuthMorphismData) -> RuthData {
    let (v, w) = (&m.source, &m.target);
    let g = &v.groupoid;
    let mut out = RuthData::uniform(g.clone(), GradedSpace::default());
    out.fibers = v
        .fibers
        .iter()
        .zip(&w.fibers)
        .map(|(a, b)| {
            let degrees: BTreeSet<i32> = a.degrees().chain(b.degrees().map(|n| n + 1)).collect();
            GradedSpace::new(degrees.into_iter().map(|n| (n, a.dim(n) + b.dim(n - 1))))
        })
        .collect();
    let keys: BTreeSet<(Simplex, i32)> = v
        .ops
        .keys()
        .cloned()
        .chain(w.ops.keys().map(|(s, n)| (s.clone(), n + 1)))
        .chain(m.comps.keys().cloned())
        .collect();
    for (s, n) in keys {
        let k = s.arity();
        let top = RationalMatrix::hstack(&[
            &v.op_matrix(&s, n),
            &RationalMatrix::zeros(v.op_shape(&s, n).0, w.op_shape(&s, n - 1).1),
        ]);
        let bottom = RationalMatrix::hstack(&[
            &m.component_matrix(&s, n),
            &w.op_matrix(&s, n - 1).scale(&(-sign(k))),
        ]);
        let block = RationalMatrix::vstack(&[&top, &bottom]);
        let implicit = if s.is_unit_arrow(g) {
            block == RationalMatrix::identity(block.rows())
        } else {
            block.is_zero()
        };
        if !implicit {
            out.ops.insert((s, n), block);
        }
    }
    out
}

/// Scalar multiple of the identity on a one-dimensional strict representation,
/// used by tests and the catalog to build characters.
pub fn character(
    groupoid: std::sync::Arc<crate::groupoid::FiniteGroupoid>,
    value: impl Fn(usize) -> i64,
) -> RuthData {
    let mut out = RuthData::uniform(groupoid.clone(), GradedSpace::new([(0, 1)]));
    for a in 0..groupoid.arrow_count() {
        if !groupoid.is_unit(a) {
            out.ops.insert(
                (Simplex::Arrows(vec![a]), 0),
                RationalMatrix::new(1, 1, vec![int(value(a))]),
            );
        }
    }
    out
}

//! Built-in example problems with their expected outcomes.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::batch::{check_problem, Outcome};
use crate::exactq::{int, Rational, RationalMatrix};
use crate::groupoid::FiniteGroupoid;
use crate::problem::{Problem, ProblemFile};
use crate::ruth::{character, RuthData, Simplex};
use crate::shifted::{OneShiftedFiber, ZeroShiftedFiber};

/// What the matching checker must report for an entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub passes: bool,
    /// Cone cohomology dimensions, when the checker reports them.
    pub cohomology: Option<BTreeMap<i32, usize>>,
    pub parity: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub problem: Problem,
    pub expected: Expected,
    /// Where the numbers come from.
    pub provenance: String,
}

impl CatalogEntry {
    pub fn run(&self) -> Outcome {
        check_problem(&self.problem, self.name.clone())
    }

    /// Whether running the checker reproduces `expected`.
    pub fn reproduces(&self) -> bool {
        let o = self.run();
        o.error.is_none()
            && o.passes == self.expected.passes
            && o.cohomology == self.expected.cohomology
            && o.parity == self.expected.parity
    }
}

/// The form `y dx` on the plane with line bundle trivial, for the algebroid
/// spanned by one section acting through the vector field `y ∂y`, evaluated
/// at the point `(x, y)`. Basis of `TM` is `(∂x, ∂y)`.
///
/// With the trivial connection the representation of the section on the line
/// is `f ↦ y ∂y(f) − f`, so its zeroth-order part gives `F = −1`. The
/// differential `d(y dx) = dy ∧ dx` has `dθ(∂x, ∂y) = −1`.
pub fn nonreg_example(x: &Rational, y: &Rational) -> ZeroShiftedFiber {
    let _ = x;
    let zero = int(0);
    ZeroShiftedFiber {
        dim_a: 1,
        dim_tm: 2,
        anchor: RationalMatrix::new(2, 1, vec![zero.clone(), y.clone()]),
        form: RationalMatrix::new(1, 2, vec![y.clone(), zero]),
        curvature: RationalMatrix::from_i64(&[&[-1]]),
        form_differential: RationalMatrix::from_i64(&[&[0, -1], &[1, 0]]),
    }
}

/// Passing +1-shifted fiber with `dim TM = n`, `dim A = n + 1`: the anchor
/// projects onto the first `n` coordinates and the form reads the last one.
pub fn synthetic_one_shifted(n: usize) -> OneShiftedFiber {
    assert!(n >= 1);
    let anchor = RationalMatrix::from_fn(n, n + 1, |i, j| int((i == j) as i64));
    let algebroid_form = RationalMatrix::from_fn(1, n + 1, |_, j| int((j == n) as i64));
    OneShiftedFiber { anchor, algebroid_form, ..OneShiftedFiber::zero(n + 1, n) }
}

fn cohomology(pairs: &[(i32, usize)]) -> Option<BTreeMap<i32, usize>> {
    Some(pairs.iter().copied().collect())
}

fn acyclic(degrees: std::ops::RangeInclusive<i32>) -> Option<BTreeMap<i32, usize>> {
    Some(degrees.map(|n| (n, 0)).collect())
}

/// Sign character of ℤ/2 on a line in degree 0.
pub fn sign_representation() -> RuthData {
    character(Arc::new(FiniteGroupoid::cyclic(2)), |a| if a == 0 { 1 } else { -1 })
}

/// ℤ/2 on a line where the unit acts by 2.
pub fn non_unital_representation() -> RuthData {
    let g = Arc::new(FiniteGroupoid::cyclic(2));
    let unit = g.unit(0);
    sign_representation()
        .with_op(Simplex::Arrows(vec![unit]), 0, RationalMatrix::from_i64(&[&[2]]))
        .expect("shapes match")
}

/// Failing instances, one per checker family.
pub fn counterexamples() -> Vec<CatalogEntry> {
    let mut parity = OneShiftedFiber::zero(2, 2);
    parity.anchor = RationalMatrix::identity(2);
    let mut flat = synthetic_one_shifted(1);
    flat.algebroid_form = RationalMatrix::zeros(1, 2);
    vec![
        CatalogEntry {
            name: "zero-shifted-all-zero".into(),
            problem: Problem::ZeroShifted(ZeroShiftedFiber::zero(1, 1)),
            expected: Expected {
                passes: false,
                cohomology: cohomology(&[(-1, 1), (0, 2), (1, 2), (2, 1)]),
                parity: Some(false),
            },
            provenance: "all maps zero; every term survives in cohomology".into(),
        },
        CatalogEntry {
            name: "one-shifted-equal-dims".into(),
            problem: Problem::OneShifted(parity),
            expected: Expected {
                passes: false,
                cohomology: cohomology(&[(-1, 0), (0, 2), (1, 0)]),
                parity: Some(false),
            },
            provenance: "dim A = dim TM = 2 with identity anchor; Euler sum of the sequence is nonzero".into(),
        },
        CatalogEntry {
            name: "one-shifted-form-dropped".into(),
            problem: Problem::OneShifted(flat),
            expected: Expected {
                passes: false,
                cohomology: cohomology(&[(-1, 1), (0, 2), (1, 1)]),
                parity: Some(true),
            },
            provenance: "synthetic family at n = 1 with the form set to zero; stacked anchor not injective".into(),
        },
        CatalogEntry {
            name: "ruth-non-unital".into(),
            problem: Problem::Ruth(non_unital_representation()),
            expected: Expected { passes: false, cohomology: None, parity: None },
            provenance: "unit arrow acts by 2 instead of the identity".into(),
        },
    ]
}

/// Every built-in entry, passing ones first.
pub fn entries() -> Vec<CatalogEntry> {
    let nonreg = |x: i64, y: i64| CatalogEntry {
        name: format!("planar-y-dx-at-{x}-{y}"),
        problem: Problem::ZeroShifted(nonreg_example(&int(x), &int(y))),
        expected: Expected { passes: true, cohomology: acyclic(-1..=2), parity: Some(true) },
        provenance: format!(
            "form y dx on the plane with anchor y ∂y and F = −1, evaluated at ({x}, {y})"
        ),
    };
    let synthetic = |n: usize| CatalogEntry {
        name: format!("one-shifted-synthetic-{n}"),
        problem: Problem::OneShifted(synthetic_one_shifted(n)),
        expected: Expected { passes: true, cohomology: acyclic(-1..=1), parity: Some(true) },
        provenance: format!("projection anchor and last-coordinate form, dim TM = {n}"),
    };
    let mut out = vec![
        nonreg(0, 1),
        nonreg(0, 0),
        nonreg(3, -2),
        synthetic(1),
        synthetic(3),
        CatalogEntry {
            name: "ruth-sign-z2".into(),
            problem: Problem::Ruth(sign_representation()),
            expected: Expected { passes: true, cohomology: None, parity: None },
            provenance: "sign character of the cyclic group of order 2".into(),
        },
    ];
    out.extend(counterexamples());
    out
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name)
}

/// All entries as a problem file, labelled by name.
pub fn export() -> ProblemFile {
    ProblemFile::new(entries().iter().map(|e| e.problem.to_record(Some(e.name.clone()))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::ratio;

    #[test]
    fn every_entry_reproduces() {
        for e in entries() {
            assert!(e.reproduces(), "{}: {:?}", e.name, e.run());
        }
    }

    #[test]
    fn nonreg_kernel_is_image() {
        for (x, y) in [(0, 1), (3, -2)] {
            let p = nonreg_example(&int(x), &int(y));
            let report = p.atiyah_cross_check().unwrap();
            assert_eq!(report.kernel_matches_image, Some(true));
            let k = report.omega.kernel_basis();
            assert_eq!(k.len(), 1);
            let expected = vec![int(0), int(y), int(-1)];
            assert!(crate::exactq::same_span(3, &k, &[expected]));
        }
        let p = nonreg_example(&ratio(1, 2), &ratio(-7, 3));
        assert!(p.check().unwrap().passes);
    }

    #[test]
    fn synthetic_sizes() {
        let p = synthetic_one_shifted(3);
        assert_eq!((p.dim_a, p.dim_tm), (4, 3));
    }

    #[test]
    fn export_reingests() {
        let file = export();
        let again = ProblemFile::parse(&file.to_json()).unwrap();
        assert_eq!(again, file);
        for (rec, e) in again.problems.iter().zip(entries()) {
            assert_eq!(rec.to_problem().unwrap(), e.problem);
        }
    }
}

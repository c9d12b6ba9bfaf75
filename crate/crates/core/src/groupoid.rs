//! Finite groupoids given by explicit composition tables.
//!
//! Objects and arrows are stored by index. The composition table is total on
//! composable pairs; dual and twisted constructions need inverses and products.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub type ObjId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("groupoid axiom `{axiom}` fails: {detail}")]
    NotAGroupoid { axiom: &'static str, detail: String },
}

fn fail(axiom: &'static str, detail: String) -> GroupoidError {
    GroupoidError::NotAGroupoid { axiom, detail }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    unit: Vec<ArrowId>,
    inv: Vec<ArrowId>,
    comp: HashMap<(ArrowId, ArrowId), ArrowId>,
}

impl fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroupoid({} objects, {} arrows)", self.objects.len(), self.arrows.len())
    }
}

/// Raw presentation by names, as read from input files.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub objects: Vec<String>,
    /// `(id, source, target)`.
    pub arrows: Vec<(String, String, String)>,
    /// `(object, unit arrow)`.
    pub units: Vec<(String, String)>,
    /// `(arrow, inverse)`.
    pub inverses: Vec<(String, String)>,
    /// `(g, h, g∘h)`.
    pub compositions: Vec<(String, String, String)>,
}

impl FiniteGroupoid {
    /// Resolves names and runs [`FiniteGroupoid::validate`].
    pub fn from_presentation(p: &Presentation) -> Result<Self, GroupoidError> {
        let obj_index: HashMap<&str, ObjId> =
            p.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let arrow_index: HashMap<&str, ArrowId> =
            p.arrows.iter().enumerate().map(|(i, a)| (a.0.as_str(), i)).collect();
        if obj_index.len() != p.objects.len() || arrow_index.len() != p.arrows.len() {
            return Err(fail("distinct identifiers", "duplicate object or arrow id".into()));
        }
        let obj = |name: &str| {
            obj_index
                .get(name)
                .copied()
                .ok_or_else(|| fail("known identifiers", format!("unknown object {name:?}")))
        };
        let arrow = |name: &str| {
            arrow_index
                .get(name)
                .copied()
                .ok_or_else(|| fail("known identifiers", format!("unknown arrow {name:?}")))
        };
        let mut src = Vec::with_capacity(p.arrows.len());
        let mut tgt = Vec::with_capacity(p.arrows.len());
        for (_, s, t) in &p.arrows {
            src.push(obj(s)?);
            tgt.push(obj(t)?);
        }
        let mut unit = vec![None; p.objects.len()];
        for (o, a) in &p.units {
            unit[obj(o)?] = Some(arrow(a)?);
        }
        let unit = unit
            .into_iter()
            .enumerate()
            .map(|(i, u)| u.ok_or_else(|| fail("unit", format!("object {:?} has no unit", p.objects[i]))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut inv = vec![None; p.arrows.len()];
        for (a, b) in &p.inverses {
            inv[arrow(a)?] = Some(arrow(b)?);
        }
        let inv = inv
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| fail("inverse", format!("arrow {:?} has no inverse", p.arrows[i].0))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut comp = HashMap::new();
        for (g, h, gh) in &p.compositions {
            comp.insert((arrow(g)?, arrow(h)?), arrow(gh)?);
        }
        let g = Self {
            objects: p.objects.clone(),
            arrows: p.arrows.iter().map(|a| a.0.clone()).collect(),
            src,
            tgt,
            unit,
            inv,
            comp,
        };
        g.validate()?;
        Ok(g)
    }

    /// The presentation this groupoid was built from, with compositions in
    /// lexicographic order of index pairs.
    pub fn presentation(&self) -> Presentation {
        let mut compositions: Vec<_> = self.comp.iter().map(|(&(g, h), &gh)| (g, h, gh)).collect();
        compositions.sort_unstable();
        Presentation {
            objects: self.objects.clone(),
            arrows: (0..self.arrows.len())
                .map(|a| {
                    (
                        self.arrows[a].clone(),
                        self.objects[self.src[a]].clone(),
                        self.objects[self.tgt[a]].clone(),
                    )
                })
                .collect(),
            units: (0..self.objects.len())
                .map(|x| (self.objects[x].clone(), self.arrows[self.unit[x]].clone()))
                .collect(),
            inverses: (0..self.arrows.len())
                .map(|a| (self.arrows[a].clone(), self.arrows[self.inv[a]].clone()))
                .collect(),
            compositions: compositions
                .into_iter()
                .map(|(g, h, gh)| {
                    (self.arrows[g].clone(), self.arrows[h].clone(), self.arrows[gh].clone())
                })
                .collect(),
        }
    }

    /// One-object groupoid of a group with elements `names` and product `mul(i, j)`.
    /// Element 0 must be the identity.
    pub fn from_group(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Self {
        let n = names.len();
        let mut comp = HashMap::new();
        let mut inv = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                let k = mul(i, j);
                comp.insert((i, j), k);
                if k == 0 {
                    inv[i] = j;
                }
            }
        }
        let g = Self {
            objects: vec!["*".into()],
            arrows: names,
            src: vec![0; n],
            tgt: vec![0; n],
            unit: vec![0],
            inv,
            comp,
        };
        debug_assert!(g.validate().is_ok());
        g
    }

    /// The groupoid with one object and only its unit.
    pub fn trivial() -> Self {
        Self::from_group(vec!["e".into()], |_, _| 0)
    }

    /// Cyclic group ℤ/n; arrow `k` is the class of `k`, named `gk` (with `e` for 0).
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|k| if k == 0 { "e".into() } else { format!("g{k}") }).collect();
        Self::from_group(names, |i, j| (i + j) % n)
    }

    /// Symmetric group on three letters. Arrows are permutations in
    /// lexicographic order of their one-line notation; composition is `(σ∘τ)(i) = σ(τ(i))`.
    pub fn symmetric3() -> Self {
        let perms = permutations3();
        let names = perms.iter().map(|p| format!("{}{}{}", p[0] + 1, p[1] + 1, p[2] + 1)).collect();
        Self::from_group(names, |i, j| {
            let composed = [perms[i][perms[j][0]], perms[i][perms[j][1]], perms[i][perms[j][2]]];
            perms.iter().position(|p| *p == composed).expect("closed under composition")
        })
    }

    /// Pair groupoid on `n` objects: exactly one arrow `x → y` for every pair.
    /// Arrow `(y, x)` has index `y * n + x` and name `y<-x`.
    pub fn pair(n: usize) -> Self {
        let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let idx = |t: usize, s: usize| t * n + s;
        let mut arrows = Vec::new();
        let (mut src, mut tgt) = (Vec::new(), Vec::new());
        for t in 0..n {
            for s in 0..n {
                arrows.push(format!("{t}<-{s}"));
                src.push(s);
                tgt.push(t);
            }
        }
        let mut comp = HashMap::new();
        for t in 0..n {
            for m in 0..n {
                for s in 0..n {
                    comp.insert((idx(t, m), idx(m, s)), idx(t, s));
                }
            }
        }
        let g = Self {
            objects,
            arrows,
            src,
            tgt,
            unit: (0..n).map(|x| idx(x, x)).collect(),
            inv: (0..n * n).map(|a| idx(a % n, a / n)).collect(),
            comp,
        };
        debug_assert!(g.validate().is_ok());
        g
    }

    /// Exhaustively checks the groupoid axioms, naming the first failure.
    pub fn validate(&self) -> Result<(), GroupoidError> {
        let name = |a: ArrowId| self.arrows[a].as_str();
        for (x, &u) in self.unit.iter().enumerate() {
            if self.src[u] != x || self.tgt[u] != x {
                return Err(fail("unit endpoints", format!("unit {} of {}", name(u), self.objects[x])));
            }
        }
        for (&(g, h), &gh) in &self.comp {
            if self.src[g] != self.tgt[h] {
                return Err(fail("composable table", format!("{} ∘ {} is not composable", name(g), name(h))));
            }
            if self.src[gh] != self.src[h] || self.tgt[gh] != self.tgt[g] {
                return Err(fail("composite endpoints", format!("{} ∘ {} = {}", name(g), name(h), name(gh))));
            }
        }
        for g in 0..self.arrows.len() {
            for h in 0..self.arrows.len() {
                if self.src[g] == self.tgt[h] && !self.comp.contains_key(&(g, h)) {
                    return Err(fail("closure", format!("{} ∘ {} missing", name(g), name(h))));
                }
            }
        }
        for g in 0..self.arrows.len() {
            if self.comp[&(g, self.unit[self.src[g]])] != g {
                return Err(fail("right unit", name(g).to_string()));
            }
            if self.comp[&(self.unit[self.tgt[g]], g)] != g {
                return Err(fail("left unit", name(g).to_string()));
            }
            let i = self.inv[g];
            if self.src[i] != self.tgt[g] || self.tgt[i] != self.src[g] {
                return Err(fail("inverse endpoints", name(g).to_string()));
            }
            if self.comp[&(g, i)] != self.unit[self.tgt[g]] {
                return Err(fail("right inverse", name(g).to_string()));
            }
            if self.comp[&(i, g)] != self.unit[self.src[g]] {
                return Err(fail("left inverse", name(g).to_string()));
            }
        }
        for t in self.composable_tuples(3) {
            let left = self.comp[&(self.comp[&(t[0], t[1])], t[2])];
            let right = self.comp[&(t[0], self.comp[&(t[1], t[2])])];
            if left != right {
                return Err(fail(
                    "associativity",
                    format!("({}, {}, {})", name(t[0]), name(t[1]), name(t[2])),
                ));
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn arrow_name(&self, g: ArrowId) -> &str {
        &self.arrows[g]
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a == name)
    }

    pub fn src(&self, g: ArrowId) -> ObjId {
        self.src[g]
    }

    pub fn tgt(&self, g: ArrowId) -> ObjId {
        self.tgt[g]
    }

    pub fn unit(&self, x: ObjId) -> ArrowId {
        self.unit[x]
    }

    pub fn inv(&self, g: ArrowId) -> ArrowId {
        self.inv[g]
    }

    pub fn is_unit(&self, g: ArrowId) -> bool {
        self.unit[self.src[g]] == g
    }

    /// `g ∘ h`, defined when `src(g) = tgt(h)`.
    pub fn compose(&self, g: ArrowId, h: ArrowId) -> Option<ArrowId> {
        self.comp.get(&(g, h)).copied()
    }

    pub fn is_composable(&self, tuple: &[ArrowId]) -> bool {
        tuple.windows(2).all(|w| self.src[w[0]] == self.tgt[w[1]])
    }

    /// Product `g_1 ⋯ g_k` of a nonempty composable tuple.
    pub fn product(&self, tuple: &[ArrowId]) -> ArrowId {
        let (&first, rest) = tuple.split_first().expect("nonempty tuple");
        rest.iter().fold(first, |acc, &g| self.comp[&(acc, g)])
    }

    /// `(g_k⁻¹, …, g_1⁻¹)`.
    pub fn reversed_inverses(&self, tuple: &[ArrowId]) -> Vec<ArrowId> {
        tuple.iter().rev().map(|&g| self.inv[g]).collect()
    }

    /// All `k`-tuples with `src(g_i) = tgt(g_{i+1})`, lexicographic in arrow index.
    /// For `k = 0` there is one empty tuple per object.
    pub fn composable_tuples(&self, k: usize) -> Vec<Vec<ArrowId>> {
        if k == 0 {
            return vec![Vec::new(); self.objects.len()];
        }
        let mut out: Vec<Vec<ArrowId>> = (0..self.arrows.len()).map(|g| vec![g]).collect();
        for _ in 1..k {
            let mut next = Vec::new();
            for t in &out {
                let last = *t.last().unwrap();
                for h in 0..self.arrows.len() {
                    if self.src[last] == self.tgt[h] {
                        let mut u = t.clone();
                        u.push(h);
                        next.push(u);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Inner face: replaces `(g_j, g_{j+1})` by their composite (`1 ≤ j < k`, 1-based).
    pub fn inner_face(&self, tuple: &[ArrowId], j: usize) -> Vec<ArrowId> {
        let mut out = tuple[..j - 1].to_vec();
        out.push(self.comp[&(tuple[j - 1], tuple[j])]);
        out.extend_from_slice(&tuple[j + 1..]);
        out
    }

    /// Degeneracy: inserts a unit at position `i` (0-based) of a nonempty composable tuple.
    pub fn degeneracy(&self, tuple: &[ArrowId], i: usize) -> Vec<ArrowId> {
        let at = if i < tuple.len() { self.tgt[tuple[i]] } else { self.src[tuple[i - 1]] };
        let mut out = tuple.to_vec();
        out.insert(i, self.unit[at]);
        out
    }
}

fn permutations3() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

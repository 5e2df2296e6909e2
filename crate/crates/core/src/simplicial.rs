//! Nerves of finite categories and finite (truncated) simplicial sets.
//!
//! A `k`-simplex of `N(C)` is a string `x0 -> x1 -> ... -> xk` of composable
//! morphisms, stored as its first object and the morphism ids. Degenerate
//! simplices carry explicit identity entries, so faces and degeneracies are
//! total on every computed level.

use std::collections::HashMap;

use serde::Serialize;

use crate::category::{FinCategory, MorId, ObjId, PointedFunctor};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Simplex {
    pub start: ObjId,
    pub mors: Vec<MorId>,
}

impl Simplex {
    pub fn vertex(start: ObjId) -> Self {
        Self {
            start,
            mors: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.mors.len()
    }

    /// The `i`th vertex `x_i`.
    pub fn vertex_at(&self, c: &FinCategory, i: usize) -> ObjId {
        if i == 0 {
            self.start
        } else {
            c.cod(self.mors[i - 1])
        }
    }

    /// `d_i`: drop `x_i`, composing across it when it is interior.
    pub fn face(&self, c: &FinCategory, i: usize) -> Simplex {
        let k = self.dim();
        assert!(k >= 1 && i <= k, "face d_{i} of a {k}-simplex");
        if i == 0 {
            return Simplex {
                start: c.cod(self.mors[0]),
                mors: self.mors[1..].to_vec(),
            };
        }
        let mut mors = self.mors.clone();
        if i == k {
            mors.pop();
        } else {
            let g = mors.remove(i);
            mors[i - 1] = c.compose(g, mors[i - 1]);
        }
        Simplex {
            start: self.start,
            mors,
        }
    }

    /// `s_i`: repeat `x_i` with an identity.
    pub fn degeneracy(&self, c: &FinCategory, i: usize) -> Simplex {
        assert!(i <= self.dim(), "degeneracy s_{i} of a {}-simplex", self.dim());
        let mut mors = self.mors.clone();
        mors.insert(i, c.identity(self.vertex_at(c, i)));
        Simplex {
            start: self.start,
            mors,
        }
    }

    pub fn map(&self, f: &PointedFunctor) -> Simplex {
        Simplex {
            start: f.on_object(self.start),
            mors: self.mors.iter().map(|&m| f.on_morphism(m)).collect(),
        }
    }
}

/// All `k`-simplices of `N(C)`, ordered by first object, then morphism ids.
pub fn nerve_simplices(c: &FinCategory, k: usize) -> Vec<Simplex> {
    let mut level: Vec<Simplex> = c.objects().map(Simplex::vertex).collect();
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &level {
            let end = s.vertex_at(c, s.dim());
            for &m in c.outgoing(end) {
                let mut mors = s.mors.clone();
                mors.push(m);
                next.push(Simplex { start: s.start, mors });
            }
        }
        level = next;
    }
    level
}

/// A simplicial set truncated at degree `d`, as explicit index tables.
///
/// `faces[k][i][x]` is `d_i x` for `x ∈ X_k` (`k ≥ 1`) and
/// `degeneracies[k][i][x]` is `s_i x` for `k < d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialSet {
    pub sizes: Vec<usize>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

/// Outcome of an exhaustive identity sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub witness: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub(crate) fn merge(&mut self, other: IdentityReport) {
        self.checked += other.checked;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }
}

impl SimplicialSet {
    pub fn degree(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Builds index tables from simplices and closures for the structure maps.
    pub fn from_levels<S: Clone + Eq + std::hash::Hash>(
        levels: &[Vec<S>],
        face: impl Fn(&S, usize) -> S,
        degeneracy: impl Fn(&S, usize) -> S,
    ) -> Self {
        let d = levels.len() - 1;
        let index: Vec<HashMap<&S, usize>> = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let lookup = |k: usize, s: &S| -> usize {
            *index[k]
                .get(s)
                .unwrap_or_else(|| panic!("structure map leaves the computed level {k}"))
        };
        let faces = (0..=d)
            .map(|k| {
                if k == 0 {
                    return Vec::new();
                }
                (0..=k)
                    .map(|i| levels[k].iter().map(|s| lookup(k - 1, &face(s, i))).collect())
                    .collect()
            })
            .collect();
        let degeneracies = (0..=d)
            .map(|k| {
                if k == d {
                    return Vec::new();
                }
                (0..=k)
                    .map(|i| levels[k].iter().map(|s| lookup(k + 1, &degeneracy(s, i))).collect())
                    .collect()
            })
            .collect();
        Self {
            sizes: levels.iter().map(Vec::len).collect(),
            faces,
            degeneracies,
        }
    }

    /// The nerve of `c` through degree `d`, with its simplices.
    pub fn nerve(c: &FinCategory, d: usize) -> (Self, Vec<Vec<Simplex>>) {
        let levels: Vec<Vec<Simplex>> = (0..=d).map(|k| nerve_simplices(c, k)).collect();
        let s = Self::from_levels(&levels, |s, i| s.face(c, i), |s, i| s.degeneracy(c, i));
        (s, levels)
    }

    fn d(&self, k: usize, i: usize, x: usize) -> usize {
        self.faces[k][i][x]
    }

    fn s(&self, k: usize, i: usize, x: usize) -> usize {
        self.degeneracies[k][i][x]
    }

    /// All five families of simplicial identities wherever both sides are
    /// defined within the computed degrees.
    pub fn check_identities(&self) -> IdentityReport {
        let d = self.degree();
        let mut checked = 0;
        let fail = |checked, w: String| IdentityReport {
            checked,
            witness: Some(w),
        };
        for k in 0..=d {
            for x in 0..self.sizes[k] {
                // d_i d_j = d_{j-1} d_i, i < j, on X_k with k >= 2
                if k >= 2 {
                    for j in 1..=k {
                        for i in 0..j {
                            checked += 1;
                            if self.d(k - 1, i, self.d(k, j, x)) != self.d(k - 1, j - 1, self.d(k, i, x)) {
                                return fail(
                                    checked,
                                    format!("d{i} d{j} != d{} d{i} on simplex {x} of degree {k}", j - 1),
                                );
                            }
                        }
                    }
                }
                if k < d {
                    for j in 0..=k {
                        let sx = self.s(k, j, x);
                        for i in 0..=k + 1 {
                            checked += 1;
                            let lhs = self.d(k + 1, i, sx);
                            let ok = if i == j || i == j + 1 {
                                lhs == x
                            } else if i < j {
                                lhs == self.s(k - 1, j - 1, self.d(k, i, x))
                            } else {
                                lhs == self.s(k - 1, j, self.d(k, i - 1, x))
                            };
                            if !ok {
                                return fail(
                                    checked,
                                    format!("d{i} s{j} identity fails on simplex {x} of degree {k}"),
                                );
                            }
                        }
                    }
                }
                if k + 2 <= d {
                    for j in 0..=k {
                        for i in 0..=j {
                            checked += 1;
                            if self.s(k + 1, i, self.s(k, j, x)) != self.s(k + 1, j + 1, self.s(k, i, x)) {
                                return fail(
                                    checked,
                                    format!("s{i} s{j} != s{} s{i} on simplex {x} of degree {k}", j + 1),
                                );
                            }
                        }
                    }
                }
            }
        }
        IdentityReport { checked, witness: None }
    }
}

/// A levelwise map of truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialMap {
    pub components: Vec<Vec<usize>>,
}

impl SimplicialMap {
    /// Whether the map commutes with every face and degeneracy.
    pub fn check(&self, source: &SimplicialSet, target: &SimplicialSet) -> IdentityReport {
        let mut checked = 0;
        for (k, comp) in self.components.iter().enumerate() {
            for (x, &fx) in comp.iter().enumerate() {
                if k >= 1 {
                    for i in 0..=k {
                        checked += 1;
                        if self.components[k - 1][source.faces[k][i][x]] != target.faces[k][i][fx] {
                            return IdentityReport {
                                checked,
                                witness: Some(format!("map does not commute with d{i} at simplex {x} of degree {k}")),
                            };
                        }
                    }
                }
                if k < source.degree() {
                    for i in 0..=k {
                        checked += 1;
                        if self.components[k + 1][source.degeneracies[k][i][x]] != target.degeneracies[k][i][fx] {
                            return IdentityReport {
                                checked,
                                witness: Some(format!("map does not commute with s{i} at simplex {x} of degree {k}")),
                            };
                        }
                    }
                }
            }
        }
        IdentityReport { checked, witness: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn walking_arrow() -> FinCategory {
        let mut b = FinCategory::builder();
        let x = b.object("0");
        let y = b.object("1");
        let ix = b.identity("1_0", x);
        let iy = b.identity("1_1", y);
        let f = b.morphism("f", x, y);
        b.composite(ix, ix, ix);
        b.composite(iy, iy, iy);
        b.composite(f, ix, f);
        b.composite(iy, f, f);
        b.build().unwrap()
    }

    #[test]
    fn walking_arrow_nerve_sizes() {
        let (n, _) = SimplicialSet::nerve(&walking_arrow(), 3);
        assert_eq!(n.sizes, vec![2, 3, 4, 5]);
        assert!(n.check_identities().passed());
    }

    #[test]
    fn faces_of_a_two_simplex() {
        let c = walking_arrow();
        let s = Simplex {
            start: 0,
            mors: vec![0, 2],
        };
        assert_eq!(s.face(&c, 0).mors, vec![2]);
        assert_eq!(s.face(&c, 1).mors, vec![2]);
        assert_eq!(s.face(&c, 2).mors, vec![0]);
        assert_eq!(s.degeneracy(&c, 2).mors, vec![0, 2, 1]);
    }

    #[test]
    fn a_broken_face_table_is_caught() {
        let (mut n, levels) = SimplicialSet::nerve(&walking_arrow(), 2);
        // send d0 of the arrow to its source
        let arrow = levels[1].iter().position(|s| s.mors == vec![2]).unwrap();
        n.faces[1][0][arrow] = n.faces[1][1][arrow];
        assert!(!n.check_identities().passed());
    }
}

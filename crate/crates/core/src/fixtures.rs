//! Standard diagrams and small categories used by the check suite, the
//! command line, and the tests, plus a seeded random diagram generator.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{FinCategory, FunctorTable, ObjId};
use crate::diagram::{CatDiagram, SetDiagram};
use crate::error::{Error, Result};
use crate::pointed::{PointedFinSet, PointedMap};
use crate::skeletal::Fskel;

/// `b ↦ C(a, b)` pointed at the zero morphism; element `k` is the `k`th
/// nonzero morphism of `hom(a, b)` in listing order.
pub fn representable(c: &Arc<FinCategory>, a: ObjId) -> Result<SetDiagram> {
    if c.basepoint().is_none() {
        return Err(Error::InvalidCategory("representables need a pointed index".into()));
    }
    let nonzero = |b: ObjId| -> Vec<usize> { c.nonzero_hom(a, b).collect() };
    let position = |b: ObjId, m: usize| -> usize {
        if c.is_zero(m) {
            0
        } else {
            nonzero(b).iter().position(|&n| n == m).unwrap() + 1
        }
    };
    SetDiagram::from_fn(
        c.clone(),
        |b| PointedFinSet::new(nonzero(b).len()),
        |h| {
            let (b, b2) = (c.dom(h), c.cod(h));
            let values = nonzero(b).iter().map(|&g| position(b2, c.compose(h, g))).collect();
            PointedMap::new(nonzero(b).len(), nonzero(b2).len(), values)
        },
    )
}

/// The Γ-set of the monoid `ℤ/m`: `<n> ↦ (ℤ/m)^n` pointed at zero, with
/// `f` acting by summing over fibres. Vectors are numbered in base `m`,
/// leftmost coordinate most significant.
pub fn monoid_gamma_set(fs: &Fskel, modulus: usize) -> Result<SetDiagram> {
    if modulus < 1 {
        return Err(Error::Malformed("modulus must be positive".into()));
    }
    let c = fs.category().clone();
    let size = |n: usize| modulus.pow(n as u32) - 1;
    let decode = |n: usize, mut code: usize| -> Vec<usize> {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = code % modulus;
            code /= modulus;
        }
        v
    };
    let encode = |v: &[usize]| v.iter().fold(0, |acc, &d| acc * modulus + d);
    SetDiagram::from_fn(
        c.clone(),
        |n| PointedFinSet::new(size(n)),
        |h| {
            let f = fs.map_of(h);
            PointedMap::from_fn(size(f.dom()), size(f.cod()), |code| {
                let v = decode(f.dom(), code);
                let mut w = vec![0; f.cod()];
                for (i, &vi) in v.iter().enumerate() {
                    let j = f.apply(i + 1);
                    if j > 0 {
                        w[j - 1] = (w[j - 1] + vi) % modulus;
                    }
                }
                encode(&w)
            })
        },
    )
}

fn check_same_index(x: &SetDiagram, y: &SetDiagram) -> Result<()> {
    if x.index() != y.index() {
        return Err(Error::Mismatch("diagrams live on different index categories".into()));
    }
    Ok(())
}

/// Levelwise wedge, with the `x` block first.
pub fn wedge(x: &SetDiagram, y: &SetDiagram) -> Result<SetDiagram> {
    check_same_index(x, y)?;
    SetDiagram::from_fn(
        x.index().clone(),
        |a| PointedFinSet::new(x.size_at(a) + y.size_at(a)),
        |h| {
            let (f, g) = (x.map(h), y.map(h));
            let values = f
                .values()
                .iter()
                .copied()
                .chain(g.values().iter().map(|&v| if v == 0 { 0 } else { v + f.cod() }))
                .collect();
            PointedMap::new(f.dom() + g.dom(), f.cod() + g.cod(), values)
        },
    )
}

/// Levelwise smash; `(u, v)` is numbered `(u - 1)·|y| + v`.
pub fn smash(x: &SetDiagram, y: &SetDiagram) -> Result<SetDiagram> {
    check_same_index(x, y)?;
    SetDiagram::from_fn(
        x.index().clone(),
        |a| PointedFinSet::new(x.size_at(a) * y.size_at(a)),
        |h| {
            let (f, g) = (x.map(h), y.map(h));
            let mut values = Vec::with_capacity(f.dom() * g.dom());
            for u in 1..=f.dom() {
                for v in 1..=g.dom() {
                    let (fu, gv) = (f.apply(u), g.apply(v));
                    values.push(if fu == 0 || gv == 0 { 0 } else { (fu - 1) * g.cod() + gv });
                }
            }
            PointedMap::new(f.dom() * g.dom(), f.cod() * g.cod(), values)
        },
    )
}

/// `<k> ∧ X`, i.e. `k` disjoint copies of `X` glued at the basepoint.
pub fn smash_with(k: usize, x: &SetDiagram) -> Result<SetDiagram> {
    let copies = (0..k).try_fold(SetDiagram::terminal(x.index().clone()), |acc, _| wedge(&acc, x))?;
    Ok(copies)
}

pub fn max_level(x: &SetDiagram) -> usize {
    x.values().iter().map(|v| v.size).max().unwrap_or(0)
}

/// A seeded grammar of diagrams: leaves are the terminal diagram,
/// representables (and monoid Γ-sets over `F`), combined by wedge, smash
/// and `<k> ∧ -`. Anything whose largest level would exceed `cap` is
/// replaced by its left operand.
pub struct RandomDiagrams {
    index: Arc<FinCategory>,
    fskel: Option<Fskel>,
    rng: ChaCha8Rng,
    cap: usize,
}

impl RandomDiagrams {
    pub fn new(index: Arc<FinCategory>, seed: u64, cap: usize) -> Self {
        Self {
            index,
            fskel: None,
            rng: ChaCha8Rng::seed_from_u64(seed),
            cap,
        }
    }

    pub fn over_fskel(fs: &Fskel, seed: u64, cap: usize) -> Self {
        Self {
            index: fs.category().clone(),
            fskel: Some(fs.clone()),
            rng: ChaCha8Rng::seed_from_u64(seed),
            cap,
        }
    }

    fn leaf(&mut self) -> Result<SetDiagram> {
        let nonbase: Vec<ObjId> = self
            .index
            .objects()
            .filter(|&a| Some(a) != self.index.basepoint())
            .collect();
        let kinds = if self.fskel.is_some() { 4 } else { 3 };
        match self.rng.gen_range(0..kinds) {
            0 => Ok(SetDiagram::terminal(self.index.clone())),
            3 => {
                let m = self.rng.gen_range(2..=3);
                monoid_gamma_set(self.fskel.as_ref().unwrap(), m)
            }
            _ => match nonbase.choose(&mut self.rng) {
                Some(&a) => representable(&self.index, a),
                None => Ok(SetDiagram::terminal(self.index.clone())),
            },
        }
    }

    fn sample(&mut self, depth: usize) -> Result<SetDiagram> {
        if depth == 0 || self.rng.gen_bool(0.35) {
            let leaf = self.leaf()?;
            return Ok(if max_level(&leaf) > self.cap {
                SetDiagram::terminal(self.index.clone())
            } else {
                leaf
            });
        }
        let left = self.sample(depth - 1)?;
        let candidate = match self.rng.gen_range(0..3) {
            0 => wedge(&left, &self.sample(depth - 1)?)?,
            1 => smash(&left, &self.sample(depth - 1)?)?,
            _ => smash_with(self.rng.gen_range(1..=3), &left)?,
        };
        Ok(if max_level(&candidate) > self.cap {
            left
        } else {
            candidate
        })
    }

    pub fn next_diagram(&mut self) -> Result<SetDiagram> {
        self.sample(3)
    }
}

/// Named diagrams on `F≤N` used throughout the checks.
pub fn fskel_fixtures(fs: &Fskel) -> Result<Vec<(String, Arc<SetDiagram>)>> {
    let c = fs.category();
    let mut out = vec![("terminal".to_string(), SetDiagram::terminal(c.clone()))];
    for n in 1..=fs.n_max() {
        out.push((format!("rep<{n}>"), representable(c, fs.object(n)?)?));
    }
    out.push(("Z/2".into(), monoid_gamma_set(fs, 2)?));
    let rep1 = representable(c, fs.object(1)?)?;
    out.push(("rep<1> v rep<1>".into(), wedge(&rep1, &rep1)?));
    out.push(("rep<1> ^ rep<1>".into(), smash(&rep1, &rep1)?));
    out.push(("<2> ^ Z/2".into(), smash_with(2, &monoid_gamma_set(fs, 2)?)?));
    Ok(out.into_iter().map(|(n, d)| (n, Arc::new(d))).collect())
}

/// The terminal category, with its one object as basepoint.
pub fn terminal_category() -> FinCategory {
    let mut b = FinCategory::builder();
    let o = b.object("*");
    let i = b.identity("1", o);
    b.composite(i, i, i);
    b.basepoint(o);
    b.build().expect("terminal category")
}

/// `0 -> 1`.
pub fn walking_arrow() -> FinCategory {
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
    b.build().expect("walking arrow")
}

/// Two objects with a unique morphism between any two.
pub fn walking_iso() -> FinCategory {
    indiscrete(2)
}

/// `n` objects with exactly one morphism `a -> b` for every pair.
pub fn indiscrete(n: usize) -> FinCategory {
    let mut b = FinCategory::builder();
    for a in 0..n {
        b.object(a.to_string());
    }
    let mut ids = vec![vec![0; n]; n];
    for a in 0..n {
        for c in 0..n {
            ids[a][c] = if a == c {
                b.identity(format!("1_{a}"), a)
            } else {
                b.morphism(format!("{a}>{c}"), a, c)
            };
        }
    }
    for a in 0..n {
        for c in 0..n {
            for e in 0..n {
                b.composite(ids[c][e], ids[a][c], ids[a][e]);
            }
        }
    }
    b.build().expect("indiscrete category")
}

/// The Γ-category `<n> ↦` indiscrete category on `{0..n}`, with each
/// pointed map acting on objects.
pub fn indiscrete_gamma_category(fs: &Fskel) -> Result<CatDiagram> {
    let c = fs.category().clone();
    let values: Vec<Arc<FinCategory>> = (0..=fs.n_max()).map(|n| Arc::new(indiscrete(n + 1))).collect();
    let objects = c.objects().map(|a| values[a].clone()).collect();
    let morphisms = c
        .morphism_ids()
        .map(|m| {
            let f = fs.map_of(m);
            let width = f.dom() + 1;
            let target = f.cod() + 1;
            FunctorTable {
                objects: (0..width).map(|a| f.apply(a)).collect(),
                morphisms: (0..width * width)
                    .map(|e| f.apply(e / width) * target + f.apply(e % width))
                    .collect(),
            }
        })
        .collect();
    CatDiagram::new(c, objects, morphisms)
}

/// Looks up a named category fixture.
pub fn named_category(name: &str) -> Option<FinCategory> {
    match name {
        "terminal" | "point" => Some(terminal_category()),
        "walking-arrow" | "arrow" => Some(walking_arrow()),
        "walking-iso" | "iso" => Some(walking_iso()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indiscrete_gamma_category_is_a_diagram() {
        let fs = Fskel::new(2).unwrap();
        let x = indiscrete_gamma_category(&fs).unwrap();
        assert!(x.validate().passed(), "{:?}", x.validate());
    }

    #[test]
    fn fixtures_validate() {
        let fs = Fskel::new(2).unwrap();
        for (name, d) in fskel_fixtures(&fs).unwrap() {
            assert!(d.validate().passed(), "{name}: {:?}", d.validate());
        }
    }

    #[test]
    fn monoid_gamma_set_sizes() {
        let fs = Fskel::new(2).unwrap();
        let z3 = monoid_gamma_set(&fs, 3).unwrap();
        assert_eq!(z3.values().iter().map(|v| v.size).collect::<Vec<_>>(), vec![0, 2, 8]);
        // fold <2> -> <1> sends (1,2) to 0
        let fold = fs.map_id(&PointedMap::new(2, 1, vec![1, 1]).unwrap()).unwrap();
        assert_eq!(z3.map(fold).apply(3 + 2), 0);
    }

    #[test]
    fn random_diagrams_are_valid_and_reproducible() {
        let fs = Fskel::new(2).unwrap();
        let mut a = RandomDiagrams::over_fskel(&fs, 7, 24);
        let mut b = RandomDiagrams::over_fskel(&fs, 7, 24);
        for _ in 0..20 {
            let (x, y) = (a.next_diagram().unwrap(), b.next_diagram().unwrap());
            assert!(x.validate().passed());
            assert!(max_level(&x) <= 24);
            assert_eq!(x, y);
        }
    }

    #[test]
    fn named_categories_validate() {
        for n in ["terminal", "walking-arrow", "walking-iso"] {
            assert!(named_category(n).unwrap().validate().passed());
        }
        assert_eq!(walking_iso().num_morphisms(), 4);
    }
}

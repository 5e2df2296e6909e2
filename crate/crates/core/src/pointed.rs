//! Pointed finite sets `<n> = {0, ..., n}` and basepoint-preserving maps.
//!
//! Element `0` is always the basepoint. A map is stored densely as the images
//! of `1..=n`; the basepoint image is implicit.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pointed set `{0, ..., size}` with basepoint `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointedFinSet {
    pub size: usize,
}

impl PointedFinSet {
    pub const fn new(size: usize) -> Self {
        Self { size }
    }

    pub const fn point() -> Self {
        Self { size: 0 }
    }

    /// Number of elements including the basepoint.
    pub const fn cardinality(&self) -> usize {
        self.size + 1
    }

    pub fn elements(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.size
    }

    pub fn nonbase(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.size
    }

    pub const fn is_point(&self) -> bool {
        self.size == 0
    }
}

impl fmt::Display for PointedFinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.size)
    }
}

/// A basepoint-preserving map `<dom> -> <cod>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPointedMap")]
pub struct PointedMap {
    dom: usize,
    cod: usize,
    values: Vec<usize>,
}

#[derive(Deserialize)]
struct RawPointedMap {
    dom: usize,
    cod: usize,
    values: Vec<usize>,
}

impl TryFrom<RawPointedMap> for PointedMap {
    type Error = Error;

    fn try_from(raw: RawPointedMap) -> Result<Self> {
        PointedMap::new(raw.dom, raw.cod, raw.values)
    }
}

impl PointedMap {
    /// `values[k - 1]` is the image of `k` for `k = 1..=dom`.
    pub fn new(dom: usize, cod: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != dom {
            return Err(Error::LengthMismatch {
                expected: dom,
                actual: values.len(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| v > cod) {
            return Err(Error::OutOfRange {
                value: bad,
                max: cod,
                context: "pointed map value".into(),
            });
        }
        Ok(Self { dom, cod, values })
    }

    pub(crate) fn new_unchecked(dom: usize, cod: usize, values: Vec<usize>) -> Self {
        debug_assert_eq!(values.len(), dom);
        debug_assert!(values.iter().all(|&v| v <= cod));
        Self { dom, cod, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::new_unchecked(n, n, (1..=n).collect())
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        Self::new_unchecked(dom, cod, vec![0; dom])
    }

    /// Builds a map from a closure on nonbasepoint elements.
    pub fn from_fn(dom: usize, cod: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(dom, cod, (1..=dom).map(f).collect())
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn source(&self) -> PointedFinSet {
        PointedFinSet::new(self.dom)
    }

    pub fn target(&self) -> PointedFinSet {
        PointedFinSet::new(self.cod)
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Image of element `k`, with `apply(0) == 0`.
    #[inline]
    pub fn apply(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.values[k - 1]
        }
    }

    /// True iff the map factors through `<0>`, i.e. is constant at the basepoint.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.values.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod + 1];
        seen[0] = true;
        for &v in &self.values {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod + 1];
        hit[0] = true;
        for &v in &self.values {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom == self.cod && self.is_injective()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &PointedMap) -> Result<PointedMap> {
        compose_pointed(self, f)
    }
}

impl fmt::Display for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>->{}[", self.dom, self.cod)?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

pub fn is_zero_morphism(f: &PointedMap) -> bool {
    f.is_zero()
}

/// Pointwise composite `g ∘ f`.
pub fn compose_pointed(g: &PointedMap, f: &PointedMap) -> Result<PointedMap> {
    if f.cod != g.dom {
        return Err(Error::Mismatch(format!(
            "cannot compose {g} after {f}: codomain <{}> is not domain <{}>",
            f.cod, g.dom
        )));
    }
    Ok(PointedMap::new_unchecked(
        f.dom,
        g.cod,
        f.values.iter().map(|&v| g.apply(v)).collect(),
    ))
}

/// Wedge of pointed sets together with the summand inclusions.
///
/// The nonbasepoint elements of the `i`th summand occupy a contiguous block,
/// in summand order. The empty wedge is `<0>`.
pub fn wedge(xs: &[PointedFinSet]) -> (PointedFinSet, Vec<PointedMap>) {
    let total: usize = xs.iter().map(|x| x.size).sum();
    let mut offset = 0;
    let inclusions = xs
        .iter()
        .map(|x| {
            let inc = PointedMap::new_unchecked(x.size, total, (offset + 1..=offset + x.size).collect());
            offset += x.size;
            inc
        })
        .collect();
    (PointedFinSet::new(total), inclusions)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_morphisms() {
        assert!(PointedMap::new(2, 3, vec![0, 0]).unwrap().is_zero());
        assert!(!PointedMap::identity(1).is_zero());
        for m in 0..4 {
            assert!(PointedMap::new(0, m, vec![]).unwrap().is_zero());
        }
    }

    #[test]
    fn rejects_out_of_range_values() {
        assert!(matches!(
            PointedMap::new(2, 1, vec![1, 2]),
            Err(Error::OutOfRange { value: 2, .. })
        ));
        assert!(matches!(
            PointedMap::new(2, 1, vec![1]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn composition_examples() {
        let f = PointedMap::new(2, 2, vec![2, 1]).unwrap();
        let g = PointedMap::new(2, 2, vec![2, 1]).unwrap();
        assert_eq!(compose_pointed(&g, &f).unwrap(), PointedMap::identity(2));
        assert_eq!(compose_pointed(&g, &PointedMap::identity(2)).unwrap(), g);
        let z = PointedMap::zero(2, 3);
        let h = PointedMap::new(1, 2, vec![2]).unwrap();
        assert!(compose_pointed(&z, &h).unwrap().is_zero());
        assert!(compose_pointed(&h, &g).is_err());
    }

    #[test]
    fn wedge_examples() {
        let (w, inc) = wedge(&[PointedFinSet::new(2), PointedFinSet::new(3)]);
        assert_eq!(w, PointedFinSet::new(5));
        assert_eq!(inc[0].values(), &[1, 2]);
        assert_eq!(inc[1].values(), &[3, 4, 5]);
        assert_eq!(wedge(&[]).0, PointedFinSet::point());
        let (p, inc) = wedge(&[PointedFinSet::point(), PointedFinSet::point()]);
        assert_eq!(p, PointedFinSet::point());
        assert!(inc.iter().all(|i| i.is_zero()));
    }

    #[test]
    fn wedge_inclusions_are_jointly_surjective_and_disjoint() {
        let sizes: Vec<_> = [3, 0, 1, 2].map(PointedFinSet::new).to_vec();
        let (w, inc) = wedge(&sizes);
        let mut hits = vec![0usize; w.cardinality()];
        for i in &inc {
            assert!(i.is_injective());
            for k in i.source().nonbase() {
                hits[i.apply(k)] += 1;
            }
        }
        assert!(hits[1..].iter().all(|&h| h == 1));
    }

    #[test]
    fn json_shape() {
        let f = PointedMap::new(2, 3, vec![3, 0]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"dom":2,"cod":3,"values":[3,0]}"#);
        let back: PointedMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<PointedMap>(r#"{"dom":1,"cod":1,"values":[4]}"#).is_err());
    }
}

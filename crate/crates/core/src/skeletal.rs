//! The skeletal category F of pointed finite sets and its relatives:
//! injections and reindexing, tuples and smash powers, the smash product of
//! tuples, and a truncated opposite simplex category.
//!
//! Smash products use the leftmost-most-significant lexicographic order: the
//! nonbasepoint pair `(a, b)` of `<m> ∧ <n>` is the element `(a - 1)·n + b`
//! of `<mn>`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{FinCategory, MorId, ObjId};
use crate::error::{Error, Result};
use crate::pointed::{compose_pointed, PointedMap};

/// Largest `N` for which the truncated F is materialized as a table
/// (about 850k composable pairs at `N = 4`).
pub const MAX_FSKEL_TABLE: usize = 4;

/// Bounds of the finite universe every computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationParams {
    /// Largest pointed set `<N>`.
    pub n_max: usize,
    /// Longest tuple.
    pub q_max: usize,
    /// Largest simplicial degree.
    pub degree: usize,
}

impl Default for TruncationParams {
    fn default() -> Self {
        Self {
            n_max: 2,
            q_max: 2,
            degree: 3,
        }
    }
}

impl TruncationParams {
    pub fn check_size(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::Truncation(format!("<{n}> exceeds N = {}", self.n_max)));
        }
        Ok(())
    }

    pub fn check_length(&self, q: usize) -> Result<()> {
        if q > self.q_max {
            return Err(Error::Truncation(format!("length {q} exceeds q_max = {}", self.q_max)));
        }
        Ok(())
    }

    pub fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.degree {
            return Err(Error::Truncation(format!("degree {d} exceeds d = {}", self.degree)));
        }
        Ok(())
    }
}

/// An injection `{1..q} -> {1..p}`, stored as its (1-based) image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawInjection")]
pub struct Injection {
    q: usize,
    p: usize,
    images: Vec<usize>,
}

#[derive(Deserialize)]
struct RawInjection {
    q: usize,
    p: usize,
    images: Vec<usize>,
}

impl TryFrom<RawInjection> for Injection {
    type Error = Error;

    fn try_from(r: RawInjection) -> Result<Self> {
        Injection::new(r.q, r.p, r.images)
    }
}

impl Injection {
    pub fn new(q: usize, p: usize, images: Vec<usize>) -> Result<Self> {
        if images.len() != q {
            return Err(Error::LengthMismatch {
                expected: q,
                actual: images.len(),
            });
        }
        let mut seen = vec![false; p + 1];
        for &j in &images {
            if j == 0 || j > p {
                return Err(Error::OutOfRange {
                    value: j,
                    max: p,
                    context: "injection image".into(),
                });
            }
            if seen[j] {
                return Err(Error::Malformed(format!("injection repeats image {j}")));
            }
            seen[j] = true;
        }
        Ok(Self { q, p, images })
    }

    pub fn identity(q: usize) -> Self {
        Self {
            q,
            p: q,
            images: (1..=q).collect(),
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.q == self.p && self.images.iter().enumerate().all(|(i, &j)| i + 1 == j)
    }

    /// `inverse()[j - 1] = Some(i)` when `f(i) = j`, `None` off the image.
    pub fn inverse(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.p];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j - 1] = Some(i + 1);
        }
        inv
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Injection) -> Result<Injection> {
        if first.p != self.q {
            return Err(Error::Mismatch(format!(
                "injection into {{1..{}}} cannot precede one out of {{1..{}}}",
                first.p, self.q
            )));
        }
        Ok(Injection {
            q: first.q,
            p: self.p,
            images: first.images.iter().map(|&i| self.images[i - 1]).collect(),
        })
    }

    /// Block sum `self ⊔ other : {1..q+q'} -> {1..p+p'}`.
    pub fn block_sum(&self, other: &Injection) -> Injection {
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&j| j + self.p));
        Injection {
            q: self.q + other.q,
            p: self.p + other.p,
            images,
        }
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}[", self.q, self.p)?;
        for (k, j) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "]")
    }
}

/// All injections `{1..q} -> {1..p}` in lexicographic order of image sequences.
pub fn enum_injections(q: usize, p: usize) -> Vec<Injection> {
    fn go(q: usize, p: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Injection>) {
        if cur.len() == q {
            out.push(Injection {
                q,
                p,
                images: cur.clone(),
            });
            return;
        }
        for j in 1..=p {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                go(q, p, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    if q <= p {
        go(q, p, &mut Vec::with_capacity(q), &mut vec![false; p + 1], &mut out);
    }
    out
}

/// Applies the reindexing `f_*` to a tuple of items, filling the positions
/// off the image of `f` with `fill`.
pub fn reindex_slice<T: Clone>(f: &Injection, items: &[T], fill: &T) -> Result<Vec<T>> {
    if items.len() != f.q {
        return Err(Error::LengthMismatch {
            expected: f.q,
            actual: items.len(),
        });
    }
    Ok(f.inverse()
        .into_iter()
        .map(|i| match i {
            Some(i) => items[i - 1].clone(),
            None => fill.clone(),
        })
        .collect())
}

/// An object of a smash power: a tuple of nonzero entries, or the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjectTuple {
    Basepoint,
    Tuple(Vec<usize>),
}

impl ObjectTuple {
    /// Normalizing constructor: any zero entry collapses to the basepoint.
    pub fn new(entries: Vec<usize>) -> Self {
        if entries.contains(&0) {
            ObjectTuple::Basepoint
        } else {
            ObjectTuple::Tuple(entries)
        }
    }

    pub fn unit() -> Self {
        ObjectTuple::Tuple(Vec::new())
    }

    pub fn is_basepoint(&self) -> bool {
        matches!(self, ObjectTuple::Basepoint)
    }

    pub fn entries(&self) -> Option<&[usize]> {
        match self {
            ObjectTuple::Basepoint => None,
            ObjectTuple::Tuple(e) => Some(e),
        }
    }

    /// Tuple length; `None` for the basepoint.
    pub fn len(&self) -> Option<usize> {
        self.entries().map(<[usize]>::len)
    }

    /// True for `()`, the empty tuple.
    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn concat(&self, other: &ObjectTuple) -> ObjectTuple {
        match (self, other) {
            (ObjectTuple::Tuple(a), ObjectTuple::Tuple(b)) => ObjectTuple::Tuple(a.iter().chain(b).copied().collect()),
            _ => ObjectTuple::Basepoint,
        }
    }
}

impl fmt::Display for ObjectTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectTuple::Basepoint => write!(f, "*"),
            ObjectTuple::Tuple(e) => {
                write!(f, "(")?;
                for (k, n) in e.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{n}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for ObjectTuple {
    type Err = Error;

    /// Accepts `*`, `()`, `<>`, `(2,3)`, `2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "*" || s == "★" {
            return Ok(ObjectTuple::Basepoint);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix('<').and_then(|r| r.strip_suffix('>')))
            .or_else(|| s.strip_prefix('⟨').and_then(|r| r.strip_suffix('⟩')))
            .unwrap_or(s)
            .trim();
        if inner.is_empty() {
            return Ok(ObjectTuple::unit());
        }
        let entries = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad tuple entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ObjectTuple::new(entries))
    }
}

impl Serialize for ObjectTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(1))?;
        match self {
            ObjectTuple::Basepoint => m.serialize_entry("basepoint", &true)?,
            ObjectTuple::Tuple(e) => m.serialize_entry("entries", e)?,
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for ObjectTuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            entries: Option<Vec<usize>>,
            basepoint: Option<bool>,
        }
        let raw = Raw::deserialize(d)?;
        match (raw.entries, raw.basepoint) {
            (Some(e), None | Some(false)) => Ok(ObjectTuple::new(e)),
            (None, Some(true)) => Ok(ObjectTuple::Basepoint),
            _ => Err(serde::de::Error::custom(
                "expected {\"entries\":[...]} or {\"basepoint\":true}",
            )),
        }
    }
}

/// `f_*` on objects: entry `j` is `t_{f⁻¹(j)}`, or `1` off the image.
pub fn reindex(f: &Injection, t: &ObjectTuple) -> Result<ObjectTuple> {
    match t {
        ObjectTuple::Basepoint => Ok(ObjectTuple::Basepoint),
        ObjectTuple::Tuple(e) => Ok(ObjectTuple::Tuple(reindex_slice(f, e, &1)?)),
    }
}

/// `f_*` on morphism tuples, filling with the identity of `<1>`.
pub fn reindex_maps(f: &Injection, psis: &[PointedMap]) -> Result<Vec<PointedMap>> {
    reindex_slice(f, psis, &PointedMap::identity(1))
}

/// The product of the entries; the empty tuple gives 1 and the basepoint 0.
pub fn smash_objects(t: &ObjectTuple) -> usize {
    match t {
        ObjectTuple::Basepoint => 0,
        ObjectTuple::Tuple(e) => e.iter().product(),
    }
}

/// Lexicographic position (1-based) of `digits` (each 1-based) in a smash of `sizes`.
fn lex_encode(digits: &[usize], sizes: &[usize]) -> usize {
    digits.iter().zip(sizes).fold(0, |acc, (&a, &n)| acc * n + (a - 1)) + 1
}

fn lex_decode(mut index: usize, sizes: &[usize], out: &mut [usize]) {
    index -= 1;
    for (slot, &n) in out.iter_mut().zip(sizes).rev() {
        *slot = index % n + 1;
        index /= n;
    }
}

/// The smash of a tuple morphism `(f, ψ) : source -> target`.
///
/// The nonbasepoint element with coordinates `(a_1, ..., a_q)` goes to the
/// element with coordinates `b_j = ψ_j(a_{f⁻¹(j)})` (with `a_∅ = 1`), or to
/// the basepoint when some `b_j` is the basepoint.
pub fn smash_maps(
    f: &Injection,
    psis: &[PointedMap],
    source: &ObjectTuple,
    target: &ObjectTuple,
) -> Result<PointedMap> {
    let src_size = smash_objects(source);
    let tgt_size = smash_objects(target);
    let (src, tgt) = match (source, target) {
        (ObjectTuple::Tuple(s), ObjectTuple::Tuple(t)) => (s, t),
        _ => return Ok(PointedMap::zero(src_size, tgt_size)),
    };
    if src.len() != f.q || tgt.len() != f.p {
        return Err(Error::Mismatch(format!(
            "injection {f} does not fit {source} -> {target}"
        )));
    }
    if psis.len() != f.p {
        return Err(Error::LengthMismatch {
            expected: f.p,
            actual: psis.len(),
        });
    }
    let inv = f.inverse();
    for (j, psi) in psis.iter().enumerate() {
        let dom = inv[j].map_or(1, |i| src[i - 1]);
        if psi.dom() != dom || psi.cod() != tgt[j] {
            return Err(Error::Mismatch(format!(
                "component {} is {psi}, expected <{dom}> -> <{}>",
                j + 1,
                tgt[j]
            )));
        }
    }
    let mut a = vec![0; src.len()];
    let mut b = vec![0; tgt.len()];
    let values = (1..=src_size)
        .map(|s| {
            lex_decode(s, src, &mut a);
            for (j, psi) in psis.iter().enumerate() {
                b[j] = psi.apply(inv[j].map_or(1, |i| a[i - 1]));
                if b[j] == 0 {
                    return 0;
                }
            }
            lex_encode(&b, tgt)
        })
        .collect();
    Ok(PointedMap::new_unchecked(src_size, tgt_size, values))
}

/// Number of pointed maps `<n> -> <m>`.
pub fn fskel_hom_count(n: usize, m: usize) -> usize {
    (m + 1).pow(n as u32)
}

fn encode_map(values: &[usize], cod: usize) -> usize {
    values.iter().fold(0, |acc, &v| acc * (cod + 1) + v)
}

fn decode_map(mut code: usize, dom: usize, cod: usize) -> Vec<usize> {
    let mut values = vec![0; dom];
    for slot in values.iter_mut().rev() {
        *slot = code % (cod + 1);
        code /= cod + 1;
    }
    values
}

/// All pointed maps `<n> -> <m>`, lexicographic in their value arrays.
pub fn enum_fskel_hom(n: usize, m: usize, nonzero_only: bool, trunc: &TruncationParams) -> Result<Vec<PointedMap>> {
    trunc.check_size(n)?;
    trunc.check_size(m)?;
    let skip = usize::from(nonzero_only);
    Ok((skip..fskel_hom_count(n, m))
        .map(|code| PointedMap::new_unchecked(n, m, decode_map(code, n, m)))
        .filter(|f| !(nonzero_only && f.is_zero()))
        .collect())
}

/// The full subcategory of F on `<0>, ..., <N>`, with `<n>` as object `n`
/// and basepoint `<0>`.
#[derive(Clone, Debug)]
pub struct Fskel {
    n_max: usize,
    cat: Arc<FinCategory>,
    offsets: Vec<usize>,
}

impl Fskel {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max > MAX_FSKEL_TABLE {
            return Err(Error::Truncation(format!(
                "F is only tabulated up to <{MAX_FSKEL_TABLE}>, asked for <{n_max}>"
            )));
        }
        let mut offsets = Vec::with_capacity((n_max + 1) * (n_max + 1));
        let mut b = FinCategory::builder();
        for n in 0..=n_max {
            b.object(format!("<{n}>"));
        }
        b.basepoint(0);
        for n in 0..=n_max {
            for m in 0..=n_max {
                offsets.push(b.num_morphisms());
                for code in 0..fskel_hom_count(n, m) {
                    let f = PointedMap::new_unchecked(n, m, decode_map(code, n, m));
                    let id = b.morphism(f.to_string(), n, m);
                    if n == m && f.is_identity() {
                        b.set_identity(n, id);
                    }
                }
            }
        }
        let width = n_max + 1;
        let id_of = |f: &PointedMap| offsets[f.dom() * width + f.cod()] + encode_map(f.values(), f.cod());
        let morphisms: Vec<(usize, usize, usize)> = (0..=n_max)
            .flat_map(|n| (0..=n_max).flat_map(move |m| (0..fskel_hom_count(n, m)).map(move |c| (n, m, c))))
            .collect();
        let cat = b.build_with(|g, f| {
            let (n, m, cf) = morphisms[f];
            let (_, l, cg) = morphisms[g];
            let fv = PointedMap::new_unchecked(n, m, decode_map(cf, n, m));
            let gv = PointedMap::new_unchecked(m, l, decode_map(cg, m, l));
            Some(id_of(&compose_pointed(&gv, &fv).ok()?))
        })?;
        Ok(Self {
            n_max,
            cat: Arc::new(cat),
            offsets,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    pub fn object(&self, n: usize) -> Result<ObjId> {
        if n > self.n_max {
            return Err(Error::Truncation(format!("<{n}> exceeds N = {}", self.n_max)));
        }
        Ok(n)
    }

    pub fn map_id(&self, f: &PointedMap) -> Result<MorId> {
        if f.dom() > self.n_max || f.cod() > self.n_max {
            return Err(Error::Truncation(format!(
                "{f} leaves the truncation N = {}",
                self.n_max
            )));
        }
        Ok(self.offsets[f.dom() * (self.n_max + 1) + f.cod()] + encode_map(f.values(), f.cod()))
    }

    pub fn map_of(&self, id: MorId) -> PointedMap {
        let m = self.cat.morphism(id);
        let code = id - self.offsets[m.dom * (self.n_max + 1) + m.cod];
        PointedMap::new_unchecked(m.dom, m.cod, decode_map(code, m.dom, m.cod))
    }
}

/// Order-preserving maps `[a] -> [b]` as value arrays of length `a + 1`, in
/// lexicographic order.
pub fn monotone_maps(a: usize, b: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, b: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=b {
            cur.push(v);
            go(len, b, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(a + 1, b, 0, &mut Vec::new(), &mut out);
    out
}

/// The opposite simplex category on `[0], ..., [d]`. A morphism `[x] -> [y]`
/// is an order-preserving map `[y] -> [x]`, and is named by its values.
pub fn delta_op(d: usize) -> Result<FinCategory> {
    let mut b = FinCategory::builder();
    for k in 0..=d {
        b.object(format!("[{k}]"));
    }
    let mut data: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for x in 0..=d {
        for y in 0..=d {
            for alpha in monotone_maps(y, x) {
                let name = format!(
                    "δ[{}]",
                    alpha.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                );
                let id = b.morphism(name, x, y);
                if x == y && alpha.iter().enumerate().all(|(i, &v)| i == v) {
                    b.set_identity(x, id);
                }
                data.push((x, y, alpha));
            }
        }
    }
    let lookup: std::collections::HashMap<&(usize, usize, Vec<usize>), MorId> =
        data.iter().enumerate().map(|(id, key)| (key, id)).collect();
    b.build_with(|g, f| {
        // f : x -> y is α_f : [y] -> [x]; g : y -> z is α_g : [z] -> [y]
        let (x, _, af) = &data[f];
        let (_, z, ag) = &data[g];
        let composite = (*x, *z, ag.iter().map(|&v| af[v]).collect());
        lookup.get(&composite).copied()
    })
}

/// `C₊`: a new zero object `*` (object 0) with a zero morphism added to
/// every hom-set. Returns the category and the embedding of old morphism ids.
pub fn adjoin_zero(c: &FinCategory) -> Result<(FinCategory, Vec<MorId>)> {
    let n = c.num_objects();
    let mut b = FinCategory::builder();
    b.object("*");
    for a in c.objects() {
        b.object(c.object_name(a).to_string());
    }
    b.basepoint(0);
    let mut embed = vec![0; c.num_morphisms()];
    let mut zero_of = vec![0; (n + 1) * (n + 1)];
    for a in 0..=n {
        for t in 0..=n {
            if a > 0 && t > 0 {
                for &f in c.hom(a - 1, t - 1) {
                    embed[f] = b.morphism(c.morphism_name(f).to_string(), a, t);
                }
            }
            zero_of[a * (n + 1) + t] = b.morphism("0", a, t);
            if a == 0 && t == 0 {
                b.set_identity(0, zero_of[0]);
            }
        }
    }
    for a in c.objects() {
        b.set_identity(a + 1, embed[c.identity(a)]);
    }
    let mut original = vec![None; b.num_morphisms()];
    for (old, &new) in embed.iter().enumerate() {
        original[new] = Some(old);
    }
    let mut ends = vec![(0, 0); b.num_morphisms()];
    for a in 0..=n {
        for t in 0..=n {
            ends[zero_of[a * (n + 1) + t]] = (a, t);
        }
    }
    for (old, &new) in embed.iter().enumerate() {
        ends[new] = (c.dom(old) + 1, c.cod(old) + 1);
    }
    let cat = b.build_with(|g, f| {
        let (a, _) = ends[f];
        let (_, t) = ends[g];
        match (original[g], original[f]) {
            (Some(og), Some(of)) => c.try_compose(og, of).map(|h| embed[h]),
            _ => Some(zero_of[a * (n + 1) + t]),
        }
    })?;
    Ok((cat, embed))
}

/// `Δᵒᵖ` on `[0..d]` with a zero object adjoined as object 0; `[k]` is object `k + 1`.
pub fn pointed_delta_op(d: usize) -> Result<FinCategory> {
    Ok(adjoin_zero(&delta_op(d)?)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trunc(n: usize) -> TruncationParams {
        TruncationParams {
            n_max: n,
            ..Default::default()
        }
    }

    #[test]
    fn hom_enumeration_examples() {
        let t = trunc(3);
        assert_eq!(enum_fskel_hom(2, 3, false, &t).unwrap().len(), 16);
        assert_eq!(enum_fskel_hom(1, 1, true, &t).unwrap(), vec![PointedMap::identity(1)]);
        for m in 0..=3 {
            assert!(enum_fskel_hom(0, m, true, &t).unwrap().is_empty());
        }
        assert!(matches!(enum_fskel_hom(4, 1, false, &t), Err(Error::Truncation(_))));
    }

    #[test]
    fn hom_enumeration_is_lexicographic() {
        let maps = enum_fskel_hom(2, 2, false, &trunc(2)).unwrap();
        let mut sorted = maps.clone();
        sorted.sort_by(|a, b| a.values().cmp(b.values()));
        assert_eq!(maps, sorted);
        assert!(maps[0].is_zero());
    }

    #[test]
    fn injection_examples() {
        assert_eq!(enum_injections(1, 2).len(), 2);
        assert!(enum_injections(2, 1).is_empty());
        assert_eq!(enum_injections(2, 3).len(), 6);
        assert_eq!(enum_injections(0, 3).len(), 1);
        assert!(Injection::new(2, 3, vec![1, 1]).is_err());
        assert!(Injection::new(1, 3, vec![4]).is_err());
    }

    #[test]
    fn reindex_examples() {
        let f = Injection::new(1, 2, vec![2]).unwrap();
        let t = ObjectTuple::new(vec![3]);
        assert_eq!(reindex(&f, &t).unwrap(), ObjectTuple::new(vec![1, 3]));
        let t2 = ObjectTuple::new(vec![2, 3]);
        assert_eq!(reindex(&Injection::identity(2), &t2).unwrap(), t2);
        assert!(reindex(&f, &t2).is_err());
        let maps = reindex_maps(&f, &[PointedMap::zero(3, 1)]).unwrap();
        assert_eq!(maps[0], PointedMap::identity(1));
    }

    #[test]
    fn smash_object_examples() {
        assert_eq!(smash_objects(&ObjectTuple::new(vec![2, 3])), 6);
        assert_eq!(smash_objects(&ObjectTuple::unit()), 1);
        assert_eq!(smash_objects(&ObjectTuple::Basepoint), 0);
        assert_eq!(ObjectTuple::new(vec![2, 0]), ObjectTuple::Basepoint);
    }

    #[test]
    fn smash_of_swap_is_transposition() {
        let t = ObjectTuple::new(vec![2, 2]);
        let swap = Injection::new(2, 2, vec![2, 1]).unwrap();
        let ids = [PointedMap::identity(2), PointedMap::identity(2)];
        let s = smash_maps(&swap, &ids, &t, &t).unwrap();
        assert_eq!(s.values(), &[1, 3, 2, 4]);
    }

    #[test]
    fn smash_of_length_one_is_the_map() {
        let psi = PointedMap::new(2, 3, vec![3, 0]).unwrap();
        let s = smash_maps(
            &Injection::identity(1),
            std::slice::from_ref(&psi),
            &ObjectTuple::new(vec![2]),
            &ObjectTuple::new(vec![3]),
        )
        .unwrap();
        assert_eq!(s, psi);
    }

    #[test]
    fn smash_with_zero_component_is_zero() {
        let t = ObjectTuple::new(vec![2, 2]);
        let psis = [PointedMap::identity(2), PointedMap::zero(2, 2)];
        assert!(smash_maps(&Injection::identity(2), &psis, &t, &t).unwrap().is_zero());
    }

    #[test]
    fn tuple_parsing() {
        assert_eq!("(2,3)".parse::<ObjectTuple>().unwrap(), ObjectTuple::new(vec![2, 3]));
        assert_eq!("()".parse::<ObjectTuple>().unwrap(), ObjectTuple::unit());
        assert_eq!("*".parse::<ObjectTuple>().unwrap(), ObjectTuple::Basepoint);
        assert_eq!("(1,0)".parse::<ObjectTuple>().unwrap(), ObjectTuple::Basepoint);
        assert!("(a)".parse::<ObjectTuple>().is_err());
        let json = serde_json::to_string(&ObjectTuple::new(vec![1, 2])).unwrap();
        assert_eq!(json, r#"{"entries":[1,2]}"#);
        assert_eq!(
            serde_json::to_string(&ObjectTuple::Basepoint).unwrap(),
            r#"{"basepoint":true}"#
        );
    }

    #[test]
    fn fskel_ids_round_trip() {
        let f = Fskel::new(2).unwrap();
        for id in f.category().morphism_ids() {
            assert_eq!(f.map_id(&f.map_of(id)).unwrap(), id);
        }
        assert!(Fskel::new(MAX_FSKEL_TABLE + 1).is_err());
    }

    #[test]
    fn truncated_fskel_is_a_category() {
        let f = Fskel::new(2).unwrap();
        assert!(f.category().validate().passed());
        assert_eq!(f.category().num_morphisms(), 23);
    }

    #[test]
    fn delta_op_counts() {
        let d = delta_op(2).unwrap();
        assert!(d.validate().passed());
        // Δ([2],[2]) has C(5,3) = 10 order-preserving maps
        assert_eq!(d.hom(2, 2).len(), 10);
        // Δ([1],[0]) has one map, so Δᵒᵖ([0],[1]) does too
        assert_eq!(d.hom(0, 1).len(), 1);
        let p = pointed_delta_op(2).unwrap();
        assert!(p.validate().passed());
        assert_eq!(p.hom(3, 3).len(), 11);
        assert!(p.is_zero(p.hom(3, 3)[10]));
    }
}

//! Weyl group elements represented by their inversion sets.
//!
//! An element w is stored as the bitmask of `I(w) = {α ∈ Φ+ : wα ∈ Φ−}` over
//! the canonical positive-root order, plus one reduced word as a certificate.
//! The mask is the identity of the element: equality, hashing, and the weak
//! order are all mask operations. Enumeration goes breadth-first from the
//! identity along right ascents, using `I(ws_i) = s_i I(w) ∪ {α_i}`.

use crate::cartan::{CartanType, Family};
use crate::rootsys::{Root, RootSystem, SubsystemEmbedding};
use crate::{Error, Result};
use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

/// Inversion-set bitmask over the canonical positive-root order.
pub type Mask = u128;

/// Guard limits for group enumeration.
#[derive(Clone, Debug)]
pub struct EnumLimits {
    /// Refuse enumerations predicted to exceed this many elements.
    pub max_elements: u64,
    /// E7 (2 903 040 elements) requires this explicit opt-in.
    pub allow_e7: bool,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_elements: 10_000_000,
            allow_e7: false,
        }
    }
}

/// Predicted group order if enumeration is allowed under the limits.
/// E8 is refused unconditionally.
pub fn check_enumeration_guard(t: &CartanType, limits: &EnumLimits) -> Result<u128> {
    if t.contains_family(Family::E, 8) {
        return Err(Error::EnumerationTooLarge(
            "type E8 has 696729600 elements; enumerating it is computationally infeasible at \
             desk scale and is always refused"
                .to_string(),
        ));
    }
    if t.contains_family(Family::E, 7) && !limits.allow_e7 {
        return Err(Error::EnumerationTooLarge(
            "type E7 has 2903040 elements; enumeration requires the explicit E7 override"
                .to_string(),
        ));
    }
    let order = t.group_order();
    if order > limits.max_elements as u128 {
        return Err(Error::EnumerationTooLarge(format!(
            "{t} has {order} elements, above the configured limit of {}",
            limits.max_elements
        )));
    }
    Ok(order)
}

/// Closure and co-closure of an inversion mask: for positive roots with
/// β + γ ∈ Φ+, both in forces the sum in, both out forces the sum out.
pub fn is_biconvex(s: &RootSystem, mask: Mask) -> bool {
    for &(j, k, l) in s.sum_pairs() {
        let bj = mask & (1 << j) != 0;
        let bk = mask & (1 << k) != 0;
        let bl = mask & (1 << l) != 0;
        if bj && bk && !bl {
            return false;
        }
        if !bj && !bk && bl {
            return false;
        }
    }
    true
}

/// Image of a mask under s_i, assuming the α_i bit is not set.
fn apply_simple_to_mask(s: &RootSystem, i: usize, mask: Mask) -> Mask {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let j = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1 << s.simple_action_index(i, j);
    }
    out
}

/// Peel right descents (smallest simple index first) to produce the
/// canonical reduced word of a biconvex mask.
fn word_from_mask(s: &RootSystem, mask: Mask) -> Vec<u8> {
    let mut word_rev = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let i = (0..s.rank())
            .find(|&i| m & (1 << s.simple_root_index(i)) != 0)
            .expect("a nonempty biconvex mask contains a simple root");
        m = apply_simple_to_mask(s, i, m & !(1 << s.simple_root_index(i)));
        word_rev.push(i as u8);
    }
    word_rev.reverse();
    word_rev
}

/// A Weyl group element: its ambient system, inversion mask, and one reduced
/// word (simple indices, 0-based) whose replay reproduces the mask.
#[derive(Clone, Debug)]
pub struct WeylElement {
    system: Arc<RootSystem>,
    mask: Mask,
    word: Vec<u8>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask && self.system == other.system
    }
}
impl Eq for WeylElement {}

impl WeylElement {
    pub fn identity(system: &Arc<RootSystem>) -> WeylElement {
        WeylElement {
            system: Arc::clone(system),
            mask: 0,
            word: Vec::new(),
        }
    }

    /// Build from an inversion mask, validating biconvexity.
    pub fn from_mask(system: &Arc<RootSystem>, mask: Mask) -> Result<WeylElement> {
        let m = system.positive_count();
        if mask != 0 && (m == 0 || mask >> (m - 1) >> 1 != 0) {
            return Err(Error::InvalidInput(
                "mask has bits beyond the positive-root count".to_string(),
            ));
        }
        if !is_biconvex(system, mask) {
            return Err(Error::NotBiconvex);
        }
        let word = word_from_mask(system, mask);
        Ok(WeylElement {
            system: Arc::clone(system),
            mask,
            word,
        })
    }

    /// Build from inversion indices into the canonical positive order.
    pub fn from_inversion_indices(system: &Arc<RootSystem>, idx: &[usize]) -> Result<WeylElement> {
        let mut mask: Mask = 0;
        for &i in idx {
            if i >= system.positive_count() {
                return Err(Error::InvalidInput(format!(
                    "inversion index {i} out of range"
                )));
            }
            mask |= 1 << i;
        }
        WeylElement::from_mask(system, mask)
    }

    /// Replay a word of simple reflections (0-based indices), toggling each
    /// letter as an ascent or descent; non-reduced words are fine.
    pub fn from_word(system: &Arc<RootSystem>, word: &[usize]) -> Result<WeylElement> {
        let mut mask: Mask = 0;
        for &i in word {
            if i >= system.rank() {
                return Err(Error::InvalidInput(format!(
                    "word letter {} out of range for rank {}",
                    i,
                    system.rank()
                )));
            }
            let bit = 1 << system.simple_root_index(i);
            if mask & bit == 0 {
                mask = apply_simple_to_mask(system, i, mask) | bit;
            } else {
                mask = apply_simple_to_mask(system, i, mask & !bit);
            }
        }
        let word = word_from_mask(system, mask);
        Ok(WeylElement {
            system: Arc::clone(system),
            mask,
            word,
        })
    }

    /// The permutation sending position i to value p[i], as an element of a
    /// type-A system in its canonical coordinates. Inversions are the pairs
    /// i < j with p[i] > p[j], realized as the roots e_i − e_j.
    pub fn from_oneline(system: &Arc<RootSystem>, p: &[usize]) -> Result<WeylElement> {
        let n = system.rank();
        let is_type_a = matches!(system.cartan_type(), CartanType::Irreducible(Family::A, _));
        let chain = CartanType::irreducible(Family::A, n.max(1))?.cartan_matrix();
        if !is_type_a || system.cartan_matrix() != chain.as_slice() {
            return Err(Error::WrongType(
                "one-line notation needs a type-A system in canonical coordinates".to_string(),
            ));
        }
        if p.len() != n + 1 {
            return Err(Error::InvalidInput(format!(
                "one-line length {} does not match rank {} + 1",
                p.len(),
                n
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in p {
            if v < 1 || v > n + 1 || seen[v - 1] {
                return Err(Error::InvalidInput(
                    "not a permutation of 1..=n+1".to_string(),
                ));
            }
            seen[v - 1] = true;
        }
        let mut mask: Mask = 0;
        for i in 0..p.len() {
            for j in (i + 1)..p.len() {
                if p[i] > p[j] {
                    let mut coeffs = vec![0i64; n];
                    for c in coeffs.iter_mut().take(j).skip(i) {
                        *c = 1;
                    }
                    let idx = system
                        .root_index(&Root::new(coeffs))
                        .expect("e_i - e_j is a positive root");
                    mask |= 1 << idx;
                }
            }
        }
        WeylElement::from_mask(system, mask)
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn length(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// One reduced word, 0-based simple indices.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Indices of the inversion roots in the canonical positive order.
    pub fn inversions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length());
        let mut m = self.mask;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }

    pub fn inversion_roots(&self) -> Vec<&Root> {
        self.inversions()
            .into_iter()
            .map(|i| &self.system.positive_roots()[i])
            .collect()
    }

    /// Right multiplication by s_i along an ascent; errors when α_i is
    /// already an inversion.
    pub fn right_mult_simple(&self, i: usize) -> Result<WeylElement> {
        if i >= self.system.rank() {
            return Err(Error::InvalidInput(format!(
                "simple index {i} out of range"
            )));
        }
        let bit = 1 << self.system.simple_root_index(i);
        if self.mask & bit != 0 {
            return Err(Error::NotAscent(i));
        }
        let mask = apply_simple_to_mask(&self.system, i, self.mask) | bit;
        let mut word = self.word.clone();
        word.push(i as u8);
        Ok(WeylElement {
            system: Arc::clone(&self.system),
            mask,
            word,
        })
    }

    /// Right multiplication by s_i, toggling ascent or descent.
    pub fn right_mult_any(&self, i: usize) -> Result<WeylElement> {
        let bit = 1 << self.system.simple_root_index(i);
        if self.mask & bit == 0 {
            return self.right_mult_simple(i);
        }
        let mask = apply_simple_to_mask(&self.system, i, self.mask & !bit);
        Ok(WeylElement {
            system: Arc::clone(&self.system),
            mask,
            word: word_from_mask(&self.system, mask),
        })
    }

    /// The complement w0·w: its inversion set is Φ+ ∖ I(w).
    pub fn complement_w0(&self) -> WeylElement {
        let mask = full_mask(&self.system) ^ self.mask;
        WeylElement {
            system: Arc::clone(&self.system),
            mask,
            word: word_from_mask(&self.system, mask),
        }
    }

    /// Left weak order: self ≤ other iff I(self) ⊆ I(other).
    pub fn weak_leq(&self, other: &WeylElement) -> Result<bool> {
        if self.system != other.system {
            return Err(Error::MixedSystems);
        }
        Ok(self.mask & !other.mask == 0)
    }

    /// Apply the element to a root of its system (either sign); the result
    /// may be negative.
    pub fn act_on_root(&self, r: &Root) -> Result<Root> {
        let valid = self.system.root_index(r).is_some()
            || self
                .system
                .root_index(&Root::new(r.coeffs().iter().map(|&c| -c).collect()))
                .is_some();
        if !valid {
            return Err(Error::ForeignRoot);
        }
        let mut out = r.clone();
        for &i in self.word.iter().rev() {
            out = self.system.reflect_simple(i as usize, &out);
        }
        Ok(out)
    }

    /// Flatten to a subsystem: the element of W(Φ′) whose inversion set is
    /// I(w) ∩ Φ′.
    pub fn restrict(&self, emb: &SubsystemEmbedding) -> Result<WeylElement> {
        if self.system != *emb.parent() {
            return Err(Error::MixedSystems);
        }
        let mut mask: Mask = 0;
        for (c, &p) in emb.root_map().iter().enumerate() {
            if self.mask & (1 << p) != 0 {
                mask |= 1 << c;
            }
        }
        WeylElement::from_mask(emb.child(), mask)
    }

    /// Element JSON: length, reduced word (1-based letters), inversion
    /// indices (0-based canonical positions).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "length": self.length(),
            "word": self.word.iter().map(|&i| i as u64 + 1).collect::<Vec<_>>(),
            "inversions": self.inversions(),
        })
    }

    /// TSV record: length, word (space-separated, 1-based), inversion
    /// indices (comma-separated).
    pub fn to_tsv(&self) -> String {
        let word = self
            .word
            .iter()
            .map(|&i| (i as u64 + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let inv = self
            .inversions()
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("{}\t{}\t{}", self.length(), word, inv)
    }
}

/// Mask with every positive root set.
pub fn full_mask(s: &RootSystem) -> Mask {
    let m = s.positive_count();
    if m == 0 {
        0
    } else {
        Mask::MAX >> (128 - m)
    }
}

/// Canonical element order: by length, then by the mask read as a big-endian
/// bit string over the canonical root order.
fn canonical_key(mask: Mask) -> (u32, u128) {
    (mask.count_ones(), mask.reverse_bits())
}

/// A fully enumerated Weyl group in canonical element order.
pub struct WeylGroup {
    system: Arc<RootSystem>,
    elements: Vec<WeylElement>,
    by_mask: HashMap<Mask, usize>,
}

impl WeylGroup {
    /// Breadth-first enumeration from the identity along right ascents.
    pub fn enumerate(system: &Arc<RootSystem>, limits: &EnumLimits) -> Result<WeylGroup> {
        let predicted = check_enumeration_guard(system.cartan_type(), limits)?;
        let mut words: HashMap<Mask, Vec<u8>> = HashMap::new();
        words.insert(0, Vec::new());
        let mut frontier: Vec<Mask> = vec![0];
        while !frontier.is_empty() {
            frontier.sort_by_key(|&m| canonical_key(m));
            let mut next: Vec<Mask> = Vec::new();
            for &mask in &frontier {
                for i in 0..system.rank() {
                    let bit = 1 << system.simple_root_index(i);
                    if mask & bit != 0 {
                        continue;
                    }
                    let up = apply_simple_to_mask(system, i, mask) | bit;
                    if !words.contains_key(&up) {
                        let mut w = words[&mask].clone();
                        w.push(i as u8);
                        words.insert(up, w);
                        next.push(up);
                    }
                }
            }
            frontier = next;
        }
        debug_assert_eq!(words.len() as u128, predicted);
        let mut elements: Vec<WeylElement> = words
            .into_iter()
            .map(|(mask, word)| WeylElement {
                system: Arc::clone(system),
                mask,
                word,
            })
            .collect();
        elements.sort_by_key(|e| canonical_key(e.mask));
        let by_mask = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.mask, i))
            .collect();
        Ok(WeylGroup {
            system: Arc::clone(system),
            elements,
            by_mask,
        })
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    /// The longest element; its inversion set is all of Φ+.
    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("groups are nonempty")
    }

    pub fn element_by_mask(&self, mask: Mask) -> Option<&WeylElement> {
        self.by_mask.get(&mask).map(|&i| &self.elements[i])
    }

    /// Number of elements of each length.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.system.positive_count() + 1];
        for e in &self.elements {
            out[e.length()] += 1;
        }
        out
    }

    /// Minimal coset representatives: elements with no inversion supported
    /// inside the parabolic subset J.
    pub fn parabolic_quotient(&self, j: &[usize]) -> Result<Vec<&WeylElement>> {
        let live = simple_subset_bits(&self.system, j)?;
        let mask_j = self.system.roots_in_simple_subset(live);
        Ok(self
            .elements
            .iter()
            .filter(|e| e.mask & mask_j == 0)
            .collect())
    }

    /// All u ≤ w in the left weak order.
    pub fn lower_ideal(&self, w: &WeylElement) -> Result<Vec<&WeylElement>> {
        if *w.system() != self.system {
            return Err(Error::MixedSystems);
        }
        Ok(self
            .elements
            .iter()
            .filter(|e| e.mask & !w.mask == 0)
            .collect())
    }

    /// All u ≥ w in the left weak order.
    pub fn upper_ideal(&self, w: &WeylElement) -> Result<Vec<&WeylElement>> {
        if *w.system() != self.system {
            return Err(Error::MixedSystems);
        }
        Ok(self
            .elements
            .iter()
            .filter(|e| w.mask & !e.mask == 0)
            .collect())
    }
}

pub(crate) fn simple_subset_bits(s: &RootSystem, j: &[usize]) -> Result<u128> {
    let mut live = 0u128;
    for &i in j {
        if i >= s.rank() {
            return Err(Error::InvalidInput(format!(
                "simple index {i} out of range for rank {}",
                s.rank()
            )));
        }
        live |= 1 << i;
    }
    Ok(live)
}

/// Parabolic decomposition w = w^J · w_J: the minimal coset representative
/// (an element of the parent) and the parabolic part (an element of the
/// child system of J). Lengths are additive.
pub fn parabolic_decompose(
    w: &WeylElement,
    j: &[usize],
) -> Result<(WeylElement, WeylElement)> {
    let system = Arc::clone(w.system());
    let emb = system.parabolic(j)?;
    let live = simple_subset_bits(&system, j)?;
    let mask_j = system.roots_in_simple_subset(live);
    let u = WeylElement::from_mask(&system, w.mask() & mask_j)
        .expect("I(w) ∩ Φ_J is biconvex");
    // w^J = w · u^{-1}: peel u's word from the right; every step descends.
    let mut m = w.mask();
    for &i in u.word().iter().rev() {
        let bit = 1 << system.simple_root_index(i as usize);
        debug_assert!(m & bit != 0, "peeling the parabolic part must descend");
        m = apply_simple_to_mask(&system, i as usize, m & !bit);
    }
    let quotient = WeylElement::from_mask(&system, m).expect("w^J is a group element");
    debug_assert_eq!(quotient.mask() & mask_j, 0);
    debug_assert_eq!(quotient.length() + u.length(), w.length());
    let parabolic_part = w.restrict(&emb)?;
    Ok((quotient, parabolic_part))
}

const CACHE_VERSION: u64 = 1;

/// Serialize an enumerated group, embedding the canonical root order so a
/// reload can be validated against a freshly built system.
pub fn save_group(group: &WeylGroup, path: &Path) -> Result<()> {
    let roots: Vec<Vec<i64>> = group
        .system()
        .positive_roots()
        .iter()
        .map(|r| r.coeffs().to_vec())
        .collect();
    let elements: Vec<serde_json::Value> = group.elements().iter().map(|e| e.to_json()).collect();
    let doc = serde_json::json!({
        "version": CACHE_VERSION,
        "cartan_type": group.system().cartan_type().to_string(),
        "positive_roots": roots,
        "elements": elements,
    });
    let data = serde_json::to_string(&doc)
        .map_err(|e| Error::InvalidInput(format!("cache serialization failed: {e}")))?;
    std::fs::write(path, data)
        .map_err(|e| Error::InvalidInput(format!("cache write failed: {e}")))?;
    Ok(())
}

/// Load a cached enumeration for the given system, validating the version,
/// the Cartan type, the embedded root order, and every element record.
pub fn load_group(system: &Arc<RootSystem>, path: &Path) -> Result<WeylGroup> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cache read failed: {e}")))?;
    let doc: serde_json::Value = serde_json::from_str(&data)
        .map_err(|e| Error::InvalidInput(format!("cache parse failed: {e}")))?;
    if doc["version"].as_u64() != Some(CACHE_VERSION) {
        return Err(Error::InvalidInput("cache version mismatch".to_string()));
    }
    if doc["cartan_type"].as_str() != Some(system.cartan_type().to_string().as_str()) {
        return Err(Error::InvalidInput("cache type mismatch".to_string()));
    }
    let roots = doc["positive_roots"]
        .as_array()
        .ok_or_else(|| Error::InvalidInput("cache missing roots".to_string()))?;
    if roots.len() != system.positive_count() {
        return Err(Error::InvalidInput("cache root order mismatch".to_string()));
    }
    for (i, r) in roots.iter().enumerate() {
        let coeffs: Vec<i64> = r
            .as_array()
            .map(|a| a.iter().filter_map(|x| x.as_i64()).collect())
            .unwrap_or_default();
        if coeffs != system.positive_roots()[i].coeffs() {
            return Err(Error::InvalidInput("cache root order mismatch".to_string()));
        }
    }
    let recs = doc["elements"]
        .as_array()
        .ok_or_else(|| Error::InvalidInput("cache missing elements".to_string()))?;
    let mut elements = Vec::with_capacity(recs.len());
    for rec in recs {
        let word: Vec<usize> = rec["word"]
            .as_array()
            .ok_or_else(|| Error::InvalidInput("cache element missing word".to_string()))?
            .iter()
            .filter_map(|x| x.as_u64())
            .map(|x| (x as usize).wrapping_sub(1))
            .collect();
        let e = WeylElement::from_word(system, &word)?;
        let inv: Vec<usize> = rec["inversions"]
            .as_array()
            .ok_or_else(|| Error::InvalidInput("cache element missing inversions".to_string()))?
            .iter()
            .filter_map(|x| x.as_u64())
            .map(|x| x as usize)
            .collect();
        if e.inversions() != inv || rec["length"].as_u64() != Some(e.length() as u64) {
            return Err(Error::InvalidInput(
                "cache element fails replay validation".to_string(),
            ));
        }
        elements.push(WeylElement {
            system: Arc::clone(system),
            mask: e.mask,
            word: word.iter().map(|&i| i as u8).collect(),
        });
    }
    let expected = system.cartan_type().group_order();
    if elements.len() as u128 != expected {
        return Err(Error::InvalidInput("cache element count mismatch".to_string()));
    }
    let mut sorted = elements.clone();
    sorted.sort_by_key(|e| canonical_key(e.mask));
    if sorted.iter().map(|e| e.mask).ne(elements.iter().map(|e| e.mask)) {
        return Err(Error::InvalidInput("cache order mismatch".to_string()));
    }
    let by_mask = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.mask, i))
        .collect();
    Ok(WeylGroup {
        system: Arc::clone(system),
        elements,
        by_mask,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn sys(name: &str) -> Arc<RootSystem> {
        RootSystem::build(&CartanType::parse(name).unwrap()).unwrap()
    }

    fn group(name: &str) -> WeylGroup {
        WeylGroup::enumerate(&sys(name), &EnumLimits::default()).unwrap()
    }

    fn root_idx(s: &RootSystem, coeffs: &[i64]) -> usize {
        s.root_index(&Root::new(coeffs.to_vec())).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        for (name, n) in [("A1", 2), ("A3", 24), ("B2", 8), ("B3", 48), ("G2", 12)] {
            assert_eq!(group(name).len(), n, "{name}");
        }
        assert_eq!(group("A2xA1").len(), 12);
    }

    #[test]
    fn enumerated_masks_are_exactly_the_biconvex_masks() {
        for name in ["B2", "A3"] {
            let g = group(name);
            let m = g.system().positive_count();
            let mut biconvex: Vec<Mask> = (0..(1u128 << m))
                .filter(|&mask| is_biconvex(g.system(), mask))
                .collect();
            biconvex.sort_by_key(|&m| canonical_key(m));
            let enumerated: Vec<Mask> = g.elements().iter().map(|e| e.mask()).collect();
            assert_eq!(enumerated, biconvex, "{name}");
        }
    }

    #[test]
    fn biconvex_examples_in_b2() {
        let s = sys("B2");
        let a1 = root_idx(&s, &[1, 0]);
        let a2 = root_idx(&s, &[0, 1]);
        let a12 = root_idx(&s, &[1, 1]);
        let a122 = root_idx(&s, &[1, 2]);
        assert!(is_biconvex(&s, (1 << a1) | (1 << a12)));
        assert!(!is_biconvex(&s, (1 << a1) | (1 << a122)));
        assert!(!is_biconvex(&s, (1 << a2) | (1 << a12)));
        assert!(is_biconvex(&s, full_mask(&s)));
        assert!(is_biconvex(&s, 0));
    }

    #[test]
    fn ascent_identity_and_errors() {
        let s = sys("B2");
        let id = WeylElement::identity(&s);
        let s1 = id.right_mult_simple(0).unwrap();
        assert_eq!(s1.inversion_roots()[0].coeffs(), &[1, 0]);
        let s12 = s1.right_mult_simple(1).unwrap();
        assert_eq!(s12.length(), 2);
        assert!(s12.right_mult_simple(1).is_err());
        // I(s1 s2) = s2 I(s1) ∪ {α2}: s2(α1) = α1 + 2α2.
        let expect = (1u128 << root_idx(&s, &[1, 2])) | (1 << root_idx(&s, &[0, 1]));
        assert_eq!(s12.mask(), expect);
    }

    #[test]
    fn applying_all_ascents_reaches_the_longest_element() {
        let g = group("B3");
        let mut w = WeylElement::identity(g.system());
        'outer: loop {
            for i in 0..g.system().rank() {
                if let Ok(next) = w.right_mult_simple(i) {
                    w = next;
                    continue 'outer;
                }
            }
            break;
        }
        assert_eq!(w.mask(), full_mask(g.system()));
        assert_eq!(&w, g.longest());
    }

    #[test]
    fn word_replay_and_length_invariants() {
        let g = group("B3");
        for e in g.elements() {
            assert_eq!(e.length(), e.word().len());
            let replay =
                WeylElement::from_word(g.system(), &e.word().iter().map(|&i| i as usize).collect::<Vec<_>>())
                    .unwrap();
            assert_eq!(replay.mask(), e.mask());
        }
    }

    #[test]
    fn from_word_toggles_non_reduced_words() {
        let s = sys("A2");
        let id = WeylElement::from_word(&s, &[0, 0]).unwrap();
        assert_eq!(id.length(), 0);
        let w = WeylElement::from_word(&s, &[0, 1, 0, 0]).unwrap();
        assert_eq!(w.length(), 2);
        let direct = WeylElement::from_word(&s, &[0, 1]).unwrap();
        assert_eq!(w, direct);
    }

    #[test]
    fn from_oneline_matches_the_inversion_rule() {
        let a3 = sys("A3");
        let w = WeylElement::from_oneline(&a3, &[3, 1, 4, 2]).unwrap();
        let expect: Vec<Vec<i64>> = vec![vec![1, 0, 0], vec![0, 0, 1], vec![1, 1, 1]];
        let mut got: Vec<Vec<i64>> = w
            .inversion_roots()
            .iter()
            .map(|r| r.coeffs().to_vec())
            .collect();
        got.sort();
        let mut expect = expect;
        expect.sort();
        assert_eq!(got, expect);
        assert_eq!(w.length(), 3);

        assert!(WeylElement::from_oneline(&a3, &[1, 1, 2, 3]).is_err());
        assert!(WeylElement::from_oneline(&a3, &[1, 2, 3]).is_err());
        let b2 = sys("B2");
        assert!(matches!(
            WeylElement::from_oneline(&b2, &[1, 2, 3]),
            Err(Error::WrongType(_))
        ));
    }

    #[test]
    fn oneline_and_words_agree_on_all_of_s4() {
        // word → permutation by right-multiplying position swaps.
        let a3 = sys("A3");
        let g = group("A3");
        for e in g.elements() {
            let mut p: Vec<usize> = (1..=4).collect();
            for &i in e.word() {
                p.swap(i as usize, i as usize + 1);
            }
            let via_oneline = WeylElement::from_oneline(&a3, &p).unwrap();
            assert_eq!(via_oneline.mask(), e.mask());
        }
    }

    #[test]
    fn complement_is_an_involution_matching_w0() {
        let g = group("B2");
        for e in g.elements() {
            let c = e.complement_w0();
            assert_eq!(c.length(), 4 - e.length());
            assert_eq!(c.complement_w0(), *e);
        }
        assert_eq!(g.identity().complement_w0(), *g.longest());
    }

    #[test]
    fn complement_of_3142_is_2413() {
        let a3 = sys("A3");
        let w = WeylElement::from_oneline(&a3, &[3, 1, 4, 2]).unwrap();
        let c = WeylElement::from_oneline(&a3, &[2, 4, 1, 3]).unwrap();
        assert_eq!(w.complement_w0(), c);
    }

    #[test]
    fn weak_order_is_containment() {
        let g = group("B2");
        let s1 = WeylElement::from_word(g.system(), &[0]).unwrap();
        let s12 = WeylElement::from_word(g.system(), &[0, 1]).unwrap();
        assert!(s1.weak_leq(&s12).is_ok());
        // I(s1) = {α1}, I(s1 s2) = {α2, α1+2α2}: incomparable.
        assert!(!s1.weak_leq(&s12).unwrap() && !s12.weak_leq(&s1).unwrap());
        let below: Vec<_> = g
            .elements()
            .iter()
            .filter(|e| e.weak_leq(g.longest()).unwrap())
            .collect();
        assert_eq!(below.len(), g.len());
        let other = group("A2");
        assert!(matches!(
            s1.weak_leq(&other.elements()[0]),
            Err(Error::MixedSystems)
        ));
    }

    #[test]
    fn act_on_root_examples() {
        let s = sys("A2");
        let w = WeylElement::from_word(&s, &[0]).unwrap();
        let a1 = Root::new(vec![1, 0]);
        let a2 = Root::new(vec![0, 1]);
        assert_eq!(w.act_on_root(&a1).unwrap().coeffs(), &[-1, 0]);
        assert_eq!(w.act_on_root(&a2).unwrap().coeffs(), &[1, 1]);
        let g = group("A2");
        for r in s.positive_roots() {
            let img = g.longest().act_on_root(r).unwrap();
            assert!(img.coeffs().iter().all(|&c| c <= 0), "w0 negates positives");
        }
        assert!(w.act_on_root(&Root::new(vec![5, 0])).is_err());
    }

    #[test]
    fn inversion_set_characterizes_action_sign() {
        let g = group("B3");
        for e in g.elements().iter().step_by(7) {
            for (idx, r) in g.system().positive_roots().iter().enumerate() {
                let image = e.act_on_root(r).unwrap();
                let negative = image.coeffs().iter().all(|&c| c <= 0);
                assert_eq!(negative, e.mask() & (1 << idx) != 0);
            }
        }
    }

    #[test]
    fn restriction_of_a_permutation_flattens() {
        let a6 = sys("A6");
        let w = WeylElement::from_oneline(&a6, &[4, 6, 2, 3, 1, 5, 7]).unwrap();
        let emb = a6.parabolic(&[1, 2]).unwrap();
        let flat = w.restrict(&emb).unwrap();
        let expect = WeylElement::from_oneline(emb.child(), &[3, 1, 2]).unwrap();
        assert_eq!(flat, expect);
    }

    #[test]
    fn restriction_to_the_full_parabolic_is_the_identity_map() {
        let g = group("B3");
        let all: Vec<usize> = (0..3).collect();
        let emb = g.system().parabolic(&all).unwrap();
        for e in g.elements() {
            let r = e.restrict(&emb).unwrap();
            assert_eq!(r.mask(), e.mask());
        }
    }

    #[test]
    fn parabolic_quotient_of_a2() {
        let g = group("A2");
        let q = g.parabolic_quotient(&[0]).unwrap();
        assert_eq!(q.len(), 3);
        let lengths: Vec<usize> = q.iter().map(|e| e.length()).collect();
        assert_eq!(lengths, vec![0, 1, 2]);
    }

    #[test]
    fn parabolic_decompose_is_exact_on_b3() {
        let g = group("B3");
        for j in [vec![0usize], vec![0, 1], vec![1, 2], vec![0, 2], vec![], vec![0, 1, 2]] {
            let emb = g.system().parabolic(&j).unwrap();
            let mask_j = {
                let live = simple_subset_bits(g.system(), &j).unwrap();
                g.system().roots_in_simple_subset(live)
            };
            for w in g.elements() {
                let (q, p) = parabolic_decompose(w, &j).unwrap();
                assert_eq!(q.length() + p.length(), w.length());
                assert_eq!(q.mask() & mask_j, 0);
                assert_eq!(p, w.restrict(&emb).unwrap());
                // Recompose: w = w^J · w_J by replaying the parabolic word.
                let mut full = q.clone();
                for &i in p.word() {
                    let parent_i = j[i as usize];
                    full = full.right_mult_simple(parent_i).unwrap();
                }
                assert_eq!(full.mask(), w.mask());
            }
        }
    }

    #[test]
    fn decompose_of_longest_gives_longest_parts() {
        let g = group("B3");
        let j = vec![0usize, 1];
        let (q, p) = parabolic_decompose(g.longest(), &j).unwrap();
        let emb = g.system().parabolic(&j).unwrap();
        assert_eq!(p.mask(), full_mask(emb.child()));
        let quotient = g.parabolic_quotient(&j).unwrap();
        assert_eq!(
            q.length(),
            quotient.iter().map(|e| e.length()).max().unwrap()
        );
    }

    #[test]
    fn ideals_in_b2() {
        let g = group("B2");
        let s1 = WeylElement::from_word(g.system(), &[0]).unwrap();
        assert_eq!(g.lower_ideal(&s1).unwrap().len(), 2);
        assert_eq!(g.upper_ideal(&s1).unwrap().len(), 4);
    }

    #[test]
    fn guard_refuses_oversized_and_e_types() {
        let small = EnumLimits {
            max_elements: 10,
            allow_e7: false,
        };
        assert!(matches!(
            check_enumeration_guard(&CartanType::parse("B3").unwrap(), &small),
            Err(Error::EnumerationTooLarge(_))
        ));
        assert!(check_enumeration_guard(&CartanType::parse("E6").unwrap(), &EnumLimits::default())
            .is_ok());
        assert!(matches!(
            check_enumeration_guard(&CartanType::parse("E7").unwrap(), &EnumLimits::default()),
            Err(Error::EnumerationTooLarge(_))
        ));
        let e7_ok = EnumLimits {
            max_elements: 10_000_000,
            allow_e7: true,
        };
        assert!(check_enumeration_guard(&CartanType::parse("E7").unwrap(), &e7_ok).is_ok());
        assert!(matches!(
            check_enumeration_guard(&CartanType::parse("E8").unwrap(), &e7_ok),
            Err(Error::EnumerationTooLarge(_))
        ));
    }

    #[test]
    fn canonical_order_is_stable_and_indexed() {
        let g = group("G2");
        assert_eq!(g.rank_sizes(), vec![1, 2, 2, 2, 2, 2, 1]);
        for (i, e) in g.elements().iter().enumerate() {
            assert_eq!(g.by_mask[&e.mask()], i);
        }
        for w in g.elements().windows(2) {
            assert!(canonical_key(w[0].mask()) < canonical_key(w[1].mask()));
        }
    }

    #[test]
    fn mask_round_trips_through_json_fields() {
        let g = group("B2");
        for e in g.elements() {
            let j = e.to_json();
            let inv: Vec<usize> = j["inversions"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap() as usize)
                .collect();
            let back = WeylElement::from_inversion_indices(g.system(), &inv).unwrap();
            assert_eq!(back, *e);
        }
    }

    #[test]
    fn cache_round_trip_is_identical(){
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("B3.v1.json");
        let g = group("B3");
        save_group(&g, &path).unwrap();
        let loaded = load_group(g.system(), &path).unwrap();
        assert_eq!(loaded.len(), g.len());
        for (a, b) in g.elements().iter().zip(loaded.elements()) {
            assert_eq!(a.mask(), b.mask());
            assert_eq!(a.word(), b.word());
        }
        // A different system rejects the cache.
        let other = sys("A3");
        assert!(load_group(&other, &path).is_err());
    }

    #[test]
    fn from_mask_rejects_garbage() {
        let s = sys("B2");
        let a1 = root_idx(&s, &[1, 0]);
        let a122 = root_idx(&s, &[1, 2]);
        assert!(matches!(
            WeylElement::from_mask(&s, (1 << a1) | (1 << a122)),
            Err(Error::NotBiconvex)
        ));
        assert!(WeylElement::from_mask(&s, 1 << 100).is_err());
        assert!(WeylElement::from_inversion_indices(&s, &[9]).is_err());
    }

    mod random {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn random_words_satisfy_the_mask_invariants(
                word in proptest::collection::vec(0usize..4, 0..14),
                name in prop_oneof![Just("A4"), Just("B4"), Just("C4"), Just("D4"), Just("F4")],
            ) {
                let s = sys(name);
                let w = WeylElement::from_word(&s, &word).unwrap();
                prop_assert!(is_biconvex(&s, w.mask()));
                prop_assert_eq!(w.length(), w.mask().count_ones() as usize);
                prop_assert_eq!(w.length(), w.word().len());
                prop_assert!(w.length() <= word.len());
                let replay = WeylElement::from_mask(&s, w.mask()).unwrap();
                prop_assert_eq!(replay.word(), w.word());
                let comp = w.complement_w0();
                prop_assert_eq!(comp.complement_w0().mask(), w.mask());
                prop_assert_eq!(comp.length(), s.positive_count() - w.length());
            }

            #[test]
            fn random_words_act_consistently_with_their_inversions(
                word in proptest::collection::vec(0usize..4, 0..10),
            ) {
                let s = sys("B4");
                let w = WeylElement::from_word(&s, &word).unwrap();
                for (idx, r) in s.positive_roots().iter().enumerate() {
                    let image = w.act_on_root(r).unwrap();
                    prop_assert_eq!(!image.is_positive(), w.mask() >> idx & 1 == 1);
                }
            }
        }
    }
}

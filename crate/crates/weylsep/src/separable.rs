//! Separability of Weyl group elements.
//!
//! An element is separable when, recursing on the rank, either the system is
//! rank one, or it splits into components whose restrictions are all
//! separable, or some simple root α_i is a *pivot*: the dual order ideal
//! `{β ∈ Φ+ : β ≥ α_i}` is contained in or disjoint from the inversion set,
//! and the restriction to the remaining simples is separable with respect to
//! that same α_i's complement.
//!
//! The recursion works on (live simple subset, inversion mask) pairs inside
//! one ambient system; results are memoized globally per irreducible
//! component after transporting the mask onto the component's canonical
//! model, so identical subproblems recur for free across elements and even
//! across ambient systems.

use crate::cartan::CartanType;
use crate::rootsys::{classify_cartan, Root, RootSystem};
use crate::weyl::{check_enumeration_guard, is_biconvex, EnumLimits, Mask, WeylElement};
use crate::{Error, Result};
use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

/// Canonical models for each Cartan type, shared by memo-key transport.
fn canonical_system(t: &CartanType) -> Arc<RootSystem> {
    static CACHE: OnceLock<Mutex<HashMap<CartanType, Arc<RootSystem>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("canonical system cache poisoned");
    guard
        .entry(t.clone())
        .or_insert_with(|| RootSystem::build(t).expect("classified types build"))
        .clone()
}

fn memo() -> &'static Mutex<HashMap<(CartanType, u128), bool>> {
    static MEMO: OnceLock<Mutex<HashMap<(CartanType, u128), bool>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Restriction of the ambient Cartan matrix to a live simple subset,
/// in ascending index order.
fn live_indices(live: u128) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = live;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

fn sub_cartan(s: &RootSystem, l: &[usize]) -> Vec<Vec<i64>> {
    l.iter()
        .map(|&a| l.iter().map(|&b| s.cartan_matrix()[a][b]).collect())
        .collect()
}

/// Memo key for an irreducible live component: its canonical Cartan type and
/// the inversion mask transported onto the canonical model, minimized over
/// all Cartan-preserving relabelings so diagram symmetries share entries.
fn component_key(s: &RootSystem, l: &[usize], mask: Mask) -> (CartanType, u128) {
    let cartan = sub_cartan(s, l);
    let t = classify_cartan(&cartan).expect("live component is a valid system");
    let canon = canonical_system(&t);
    let mut best: Option<u128> = None;
    for sigma in crate::rootsys::all_matrix_bijections(&cartan, canon.cartan_matrix()) {
        let mut out: u128 = 0;
        let mut m = mask;
        while m != 0 {
            let r = m.trailing_zeros() as usize;
            m &= m - 1;
            let coeffs = s.positive_roots()[r].coeffs();
            let mut target = vec![0i64; l.len()];
            for (k, &pos) in l.iter().enumerate() {
                target[sigma[k]] = coeffs[pos];
            }
            let idx = canon
                .root_index(&Root::new(target))
                .expect("transport along a Cartan bijection lands on a root");
            out |= 1 << idx;
        }
        best = Some(match best {
            Some(b) if b <= out => b,
            _ => out,
        });
    }
    (t, best.unwrap_or(0))
}

/// Separability of (live subset, mask); mask must only use roots supported
/// inside the live subset.
fn separable_live(s: &RootSystem, live: u128, mask: Mask) -> bool {
    let components = s.components_of_subset(live);
    components
        .iter()
        .all(|&c| separable_component(s, c, mask & s.roots_in_simple_subset(c)))
}

fn separable_component(s: &RootSystem, live: u128, mask: Mask) -> bool {
    if live.count_ones() <= 1 {
        return true;
    }
    let l = live_indices(live);
    let key = component_key(s, &l, mask);
    if let Some(&v) = memo().lock().expect("memo poisoned").get(&key) {
        return v;
    }
    let mut result = false;
    for &i in &l {
        let d = s.dual_ideal_mask(live, i);
        if d & mask != d && d & mask != 0 {
            continue;
        }
        let rest = live & !(1 << i);
        if separable_live(s, rest, mask & s.roots_in_simple_subset(rest)) {
            result = true;
            break;
        }
    }
    memo()
        .lock()
        .expect("memo poisoned")
        .insert(key, result);
    result
}

/// All simple indices satisfying the dual-ideal half of the pivot condition:
/// `{β ≥ α_i}` contained in or disjoint from I(w). Callers still have to
/// check the recursive half.
pub fn pivots(w: &WeylElement) -> Result<Vec<usize>> {
    let s = w.system();
    if !s.is_irreducible() {
        return Err(Error::WrongType(
            "pivot candidates are defined for irreducible systems".to_string(),
        ));
    }
    let live = (1u128 << s.rank()) - 1;
    let mask = w.mask();
    Ok((0..s.rank())
        .filter(|&i| {
            let d = s.dual_ideal_mask(live, i);
            d & mask == d || d & mask == 0
        })
        .collect())
}

/// Decide separability. Memoized; safe to call concurrently.
pub fn is_separable(w: &WeylElement) -> bool {
    let s = w.system();
    let live = if s.rank() == 0 { 0 } else { (1u128 << s.rank()) - 1 };
    separable_live(s, live, w.mask())
}

/// Which side of a pivot the dual ideal sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotSide {
    /// The dual ideal is wholly inside the inversion set.
    Full,
    /// The dual ideal is disjoint from the inversion set.
    Empty,
}

/// A replayable witness of separability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparabilityCertificate {
    /// Rank ≤ 1: the lone positive root is in the inversion set or not.
    Leaf { in_inversions: bool },
    /// Reducible case, one certificate per component in canonical order.
    Split { components: Vec<SeparabilityCertificate> },
    /// Irreducible case: the chosen pivot (ambient simple index), the side,
    /// and the certificate for the restriction.
    Pivot {
        pivot: usize,
        side: PivotSide,
        child: Box<SeparabilityCertificate>,
    },
}

impl SeparabilityCertificate {
    /// Rebuild the inversion mask the certificate describes.
    pub fn replay(&self, s: &RootSystem) -> Mask {
        let live = if s.rank() == 0 { 0 } else { (1u128 << s.rank()) - 1 };
        self.replay_live(s, live)
    }

    fn replay_live(&self, s: &RootSystem, live: u128) -> Mask {
        match self {
            SeparabilityCertificate::Leaf { in_inversions } => {
                if !in_inversions {
                    return 0;
                }
                let i = live.trailing_zeros() as usize;
                1 << s.simple_root_index(i)
            }
            SeparabilityCertificate::Split { components } => {
                let comps = s.components_of_subset(live);
                assert_eq!(comps.len(), components.len(), "split arity mismatch");
                comps
                    .iter()
                    .zip(components)
                    .map(|(&c, cert)| cert.replay_live(s, c))
                    .fold(0, |a, b| a | b)
            }
            SeparabilityCertificate::Pivot { pivot, side, child } => {
                let rest = live & !(1 << *pivot);
                let base = child.replay_live(s, rest);
                match side {
                    PivotSide::Full => base | s.dual_ideal_mask(live, *pivot),
                    PivotSide::Empty => base,
                }
            }
        }
    }

    /// Nested JSON mirroring the tree; pivot indices are 1-based to match
    /// the α_i naming used in human-readable output.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            SeparabilityCertificate::Leaf { in_inversions } => serde_json::json!({
                "kind": "leaf",
                "in_inversions": in_inversions,
            }),
            SeparabilityCertificate::Split { components } => serde_json::json!({
                "kind": "split",
                "components": components.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            }),
            SeparabilityCertificate::Pivot { pivot, side, child } => serde_json::json!({
                "kind": "pivot",
                "pivot": pivot + 1,
                "side": match side { PivotSide::Full => "full", PivotSide::Empty => "empty" },
                "child": child.to_json(),
            }),
        }
    }

    /// Compact one-line rendering, e.g. `pivot α2 (empty side) → leaf`.
    pub fn render(&self) -> String {
        match self {
            SeparabilityCertificate::Leaf { in_inversions } => {
                if *in_inversions {
                    "leaf (inverted)".to_string()
                } else {
                    "leaf".to_string()
                }
            }
            SeparabilityCertificate::Split { components } => {
                let inner: Vec<String> = components.iter().map(|c| c.render()).collect();
                format!("split [{}]", inner.join("; "))
            }
            SeparabilityCertificate::Pivot { pivot, side, child } => {
                let side = match side {
                    PivotSide::Full => "full",
                    PivotSide::Empty => "empty",
                };
                format!("pivot α{} ({side} side) → {}", pivot + 1, child.render())
            }
        }
    }
}

/// Witness construction: same recursion as the decision path, first viable
/// pivot in ascending simple order, so certificates are reproducible.
pub fn certificate(w: &WeylElement) -> Option<SeparabilityCertificate> {
    let s = w.system();
    let live = if s.rank() == 0 { 0 } else { (1u128 << s.rank()) - 1 };
    certificate_live(s, live, w.mask())
}

fn certificate_live(s: &RootSystem, live: u128, mask: Mask) -> Option<SeparabilityCertificate> {
    let components = s.components_of_subset(live);
    if components.len() != 1 {
        let mut parts = Vec::with_capacity(components.len());
        for &c in &components {
            parts.push(certificate_component(s, c, mask & s.roots_in_simple_subset(c))?);
        }
        return Some(SeparabilityCertificate::Split { components: parts });
    }
    certificate_component(s, components[0], mask)
}

fn certificate_component(s: &RootSystem, live: u128, mask: Mask) -> Option<SeparabilityCertificate> {
    if live.count_ones() == 1 {
        return Some(SeparabilityCertificate::Leaf {
            in_inversions: mask != 0,
        });
    }
    for i in live_indices(live) {
        let d = s.dual_ideal_mask(live, i);
        let side = if d & mask == d {
            PivotSide::Full
        } else if d & mask == 0 {
            PivotSide::Empty
        } else {
            continue;
        };
        let rest = live & !(1 << i);
        let rest_mask = mask & s.roots_in_simple_subset(rest);
        if !separable_live(s, rest, rest_mask) {
            continue;
        }
        let child = certificate_live(s, rest, rest_mask)
            .expect("decision and certificate paths agree");
        return Some(SeparabilityCertificate::Pivot {
            pivot: i,
            side,
            child: Box::new(child),
        });
    }
    None
}

/// Construct every separable element: for each pivot and each side, extend
/// the separable sets of the remaining simples by all of the pivot's dual
/// ideal or by nothing. Biconvexity of the results is a theorem, and is
/// asserted in debug builds.
pub fn generate_separable(
    s: &Arc<RootSystem>,
    limits: &EnumLimits,
) -> Result<Vec<WeylElement>> {
    check_enumeration_guard(s.cartan_type(), limits)?;
    let live = if s.rank() == 0 { 0 } else { (1u128 << s.rank()) - 1 };
    let mut cache: HashMap<u128, Vec<Mask>> = HashMap::new();
    let masks = generate_live(s, live, &mut cache);
    let mut masks: Vec<Mask> = masks.into_iter().collect();
    masks.sort_by_key(|&m| (m.count_ones(), m.reverse_bits()));
    masks
        .into_iter()
        .map(|m| {
            debug_assert!(is_biconvex(s, m));
            WeylElement::from_mask(s, m)
        })
        .collect()
}

fn generate_live(s: &RootSystem, live: u128, cache: &mut HashMap<u128, Vec<Mask>>) -> Vec<Mask> {
    if let Some(v) = cache.get(&live) {
        return v.clone();
    }
    let components = s.components_of_subset(live);
    let out: Vec<Mask> = if components.is_empty() {
        vec![0]
    } else if components.len() > 1 {
        let mut acc: Vec<Mask> = vec![0];
        for &c in &components {
            let part = generate_live(s, c, cache);
            let mut next = Vec::with_capacity(acc.len() * part.len());
            for &a in &acc {
                for &b in &part {
                    next.push(a | b);
                }
            }
            acc = next;
        }
        acc
    } else if live.count_ones() == 1 {
        let i = live.trailing_zeros() as usize;
        vec![0, 1 << s.simple_root_index(i)]
    } else {
        let mut set: HashSet<Mask> = HashSet::new();
        for i in live_indices(live) {
            let d = s.dual_ideal_mask(live, i);
            let rest = live & !(1 << i);
            for m in generate_live(s, rest, cache) {
                set.insert(m);
                set.insert(m | d);
            }
        }
        let mut v: Vec<Mask> = set.into_iter().collect();
        v.sort_unstable();
        v
    };
    cache.insert(live, out.clone());
    out
}

//! Pattern containment and avoidance.
//!
//! An element `(w, Φ)` contains a pattern `(u, Ψ)` when some subsystem
//! `Φ′ = Φ ∩ U` is isomorphic to Ψ via a simple-root bijection preserving the
//! Cartan matrix, and the flattened element `I(w) ∩ Φ′` transports onto
//! `I(u)`. Separability is equivalent to avoiding a fixed list of ten
//! patterns: two on A3, two on B2, and six on G2.

use crate::cartan::CartanType;
use crate::rootsys::{all_matrix_bijections, Root, RootSystem, SubsystemEmbedding};
use crate::separable::is_separable;
use crate::weyl::{EnumLimits, Mask, WeylElement, WeylGroup};
use crate::Result;
use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

/// A named pattern: an element of a small reference system.
#[derive(Clone, Debug)]
pub struct Pattern {
    name: String,
    system: Arc<RootSystem>,
    element: WeylElement,
}

impl Pattern {
    pub fn new(name: &str, element: WeylElement) -> Pattern {
        Pattern {
            name: name.to_string(),
            system: Arc::clone(element.system()),
            element,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn element(&self) -> &WeylElement {
        &self.element
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "type": self.system.cartan_type().to_string(),
            "element": self.element.to_json(),
        })
    }
}

/// The ten forbidden patterns, in canonical listing order. Within one system
/// and length, the `a`/`b` suffixes follow the canonical element order.
pub fn forbidden_set() -> &'static [Pattern] {
    static SET: OnceLock<Vec<Pattern>> = OnceLock::new();
    SET.get_or_init(|| {
        let mut out = Vec::with_capacity(10);
        let a3 = RootSystem::build(&CartanType::parse("A3").unwrap()).unwrap();
        out.push(Pattern::new(
            "A3:3142",
            WeylElement::from_oneline(&a3, &[3, 1, 4, 2]).unwrap(),
        ));
        out.push(Pattern::new(
            "A3:2413",
            WeylElement::from_oneline(&a3, &[2, 4, 1, 3]).unwrap(),
        ));
        let b2 = RootSystem::build(&CartanType::parse("B2").unwrap()).unwrap();
        let b2_len2: Vec<WeylElement> = WeylGroup::enumerate(&b2, &EnumLimits::default())
            .unwrap()
            .elements()
            .iter()
            .filter(|e| e.length() == 2)
            .cloned()
            .collect();
        assert_eq!(b2_len2.len(), 2);
        out.push(Pattern::new("B2:len2a", b2_len2[0].clone()));
        out.push(Pattern::new("B2:len2b", b2_len2[1].clone()));
        let g2 = RootSystem::build(&CartanType::parse("G2").unwrap()).unwrap();
        let g2_group = WeylGroup::enumerate(&g2, &EnumLimits::default()).unwrap();
        for len in 2..=4 {
            let pair: Vec<WeylElement> = g2_group
                .elements()
                .iter()
                .filter(|e| e.length() == len)
                .cloned()
                .collect();
            assert_eq!(pair.len(), 2);
            out.push(Pattern::new(&format!("G2:len{len}a"), pair[0].clone()));
            out.push(Pattern::new(&format!("G2:len{len}b"), pair[1].clone()));
        }
        out
    })
}

/// One concrete occurrence of a pattern inside an ambient element.
#[derive(Clone, Debug)]
pub struct PatternInstance {
    pub embedding: SubsystemEmbedding,
    pub flattened: WeylElement,
    pub matched: Pattern,
    /// Simple-root bijection child → pattern, preserving the Cartan matrix.
    pub iso: Vec<usize>,
}

impl PatternInstance {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pattern": self.matched.name(),
            "span_basis": self.embedding.span_basis(),
            "iso": self.iso.iter().map(|&i| i + 1).collect::<Vec<_>>(),
            "flattened": self.flattened.to_json(),
        })
    }

    /// Short location phrase for human-readable output.
    pub fn location(&self) -> String {
        if self.embedding.child().rank() == self.embedding.parent().rank() {
            "the identity embedding".to_string()
        } else {
            let rows: Vec<String> = self
                .embedding
                .span_basis()
                .iter()
                .map(|r| {
                    format!(
                        "({})",
                        r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
                    )
                })
                .collect();
            format!("the subsystem spanned by {}", rows.join(" "))
        }
    }
}

/// Precomputed match data: for one (embedding, iso) pair, strict containment
/// of a pattern is a two-mask comparison against the ambient inversion mask.
struct Template {
    pattern_idx: usize,
    emb_idx: usize,
    iso: Vec<usize>,
    sub_mask: Mask,
    target_mask: Mask,
    /// child positive index → pattern positive index under the iso.
    child_to_pattern: Vec<usize>,
}

fn build_templates(
    system: &Arc<RootSystem>,
    patterns: &[Pattern],
) -> Result<(Vec<SubsystemEmbedding>, Vec<Template>)> {
    let mut embeddings_by_rank: HashMap<usize, Vec<SubsystemEmbedding>> = HashMap::new();
    let mut embeddings: Vec<SubsystemEmbedding> = Vec::new();
    let mut templates = Vec::new();
    for (pattern_idx, p) in patterns.iter().enumerate() {
        let k = p.rank();
        if k > system.rank() || k == 0 {
            continue;
        }
        if !embeddings_by_rank.contains_key(&k) {
            embeddings_by_rank.insert(k, system.enumerate_subsystems(k)?);
        }
        for emb in &embeddings_by_rank[&k] {
            if emb.child().cartan_type() != p.system.cartan_type() {
                continue;
            }
            let isos =
                all_matrix_bijections(emb.child().cartan_matrix(), p.system.cartan_matrix());
            if isos.is_empty() {
                continue;
            }
            let emb_idx = match embeddings
                .iter()
                .position(|e| e.span_basis() == emb.span_basis())
            {
                Some(i) => i,
                None => {
                    embeddings.push(emb.clone());
                    embeddings.len() - 1
                }
            };
            for iso in isos {
                let child = emb.child();
                let mut child_to_pattern = Vec::with_capacity(child.positive_count());
                for r in child.positive_roots() {
                    let mut target = vec![0i64; child.rank()];
                    for (k, &c) in r.coeffs().iter().enumerate() {
                        target[iso[k]] = c;
                    }
                    let idx = p
                        .system
                        .root_index(&Root::new(target))
                        .expect("a Cartan bijection transports roots to roots");
                    child_to_pattern.push(idx);
                }
                let mut target_mask: Mask = 0;
                for (c, &pi) in child_to_pattern.iter().enumerate() {
                    if p.element.mask() & (1 << pi) != 0 {
                        target_mask |= 1 << emb.root_map()[c];
                    }
                }
                templates.push(Template {
                    pattern_idx,
                    emb_idx,
                    iso,
                    sub_mask: emb.parent_mask(),
                    target_mask,
                    child_to_pattern,
                });
            }
        }
    }
    Ok((embeddings, templates))
}

/// All images of the pattern's inversion set under the pattern system's full
/// automorphism group (Weyl group, diagram symmetries via the iso choices,
/// and global negation) that land inside the positive roots.
fn automorphism_orbit_masks(p: &Pattern) -> HashSet<Mask> {
    let group = WeylGroup::enumerate(&p.system, &EnumLimits::default())
        .expect("pattern systems are tiny");
    let mut out = HashSet::new();
    let inv = p.element.inversions();
    for g in group.elements() {
        let mut pos_mask: Mask = 0;
        let mut all_pos = true;
        let mut all_neg = true;
        let mut neg_mask: Mask = 0;
        for &r in &inv {
            let image = g
                .act_on_root(&p.system.positive_roots()[r])
                .expect("own roots");
            if image.coeffs().iter().all(|&c| c <= 0) {
                all_pos = false;
                let flipped = Root::new(image.coeffs().iter().map(|&c| -c).collect());
                neg_mask |= 1 << p.system.root_index(&flipped).unwrap();
            } else {
                all_neg = false;
                pos_mask |= 1 << p.system.root_index(&image).unwrap();
            }
        }
        if all_pos || inv.is_empty() {
            out.insert(pos_mask);
        }
        if all_neg && !inv.is_empty() {
            out.insert(neg_mask);
        }
    }
    out
}

/// Match tables for the whole forbidden set against one ambient system.
pub struct PatternSweep {
    system: Arc<RootSystem>,
    embeddings: Vec<SubsystemEmbedding>,
    templates: Vec<Template>,
    loose_targets: Vec<HashSet<Mask>>,
}

impl PatternSweep {
    pub fn new(system: &Arc<RootSystem>) -> Result<PatternSweep> {
        let (embeddings, templates) = build_templates(system, forbidden_set())?;
        let loose_targets = forbidden_set().iter().map(automorphism_orbit_masks).collect();
        Ok(PatternSweep {
            system: Arc::clone(system),
            embeddings,
            templates,
            loose_targets,
        })
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    fn first_template(&self, mask: Mask) -> Option<&Template> {
        self.templates
            .iter()
            .find(|t| mask & t.sub_mask == t.target_mask)
    }

    pub fn avoids(&self, mask: Mask) -> bool {
        self.first_template(mask).is_none()
    }

    /// First match in canonical order: forbidden-set listing order, then
    /// canonical subsystem order, then lexicographic iso order.
    pub fn first_match(&self, w: &WeylElement) -> Option<PatternInstance> {
        let t = self.first_template(w.mask())?;
        Some(self.instance(w, t))
    }

    fn instance(&self, w: &WeylElement, t: &Template) -> PatternInstance {
        let emb = self.embeddings[t.emb_idx].clone();
        let flattened = w.restrict(&emb).expect("ambient masks restrict");
        PatternInstance {
            embedding: emb,
            flattened,
            matched: forbidden_set()[t.pattern_idx].clone(),
            iso: t.iso.clone(),
        }
    }

    /// Avoidance when pattern matching is widened to arbitrary root-system
    /// isomorphisms, including ones that do not preserve positivity.
    pub fn avoids_loose(&self, mask: Mask) -> bool {
        !self.templates.iter().any(|t| {
            let mut transported: Mask = 0;
            for (c, &pi) in t.child_to_pattern.iter().enumerate() {
                if mask & (1 << self.embeddings[t.emb_idx].root_map()[c]) != 0 {
                    transported |= 1 << pi;
                }
            }
            self.loose_targets[t.pattern_idx].contains(&transported)
        })
    }
}

fn cached_sweep(system: &Arc<RootSystem>) -> Arc<PatternSweep> {
    static CACHE: OnceLock<Mutex<HashMap<CartanType, Arc<PatternSweep>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("sweep cache poisoned");
    if let Some(sw) = guard.get(system.cartan_type()) {
        if sw.system == *system {
            return Arc::clone(sw);
        }
    }
    let sw = Arc::new(PatternSweep::new(system).expect("sweep construction"));
    guard.insert(system.cartan_type().clone(), Arc::clone(&sw));
    sw
}

/// First occurrence of the given pattern inside w, in canonical subsystem
/// order, or None. Patterns of larger rank than the ambient never match.
pub fn contains(w: &WeylElement, p: &Pattern) -> Option<PatternInstance> {
    let (embeddings, templates) =
        build_templates(w.system(), std::slice::from_ref(p)).ok()?;
    let t = templates
        .iter()
        .find(|t| w.mask() & t.sub_mask == t.target_mask)?;
    let emb = embeddings[t.emb_idx].clone();
    let flattened = w.restrict(&emb).expect("ambient masks restrict");
    Some(PatternInstance {
        embedding: emb,
        flattened,
        matched: p.clone(),
        iso: t.iso.clone(),
    })
}

/// Every occurrence of the pattern, in canonical subsystem order.
pub fn all_instances(w: &WeylElement, p: &Pattern) -> Vec<PatternInstance> {
    let Ok((embeddings, templates)) = build_templates(w.system(), std::slice::from_ref(p))
    else {
        return Vec::new();
    };
    templates
        .iter()
        .filter(|t| w.mask() & t.sub_mask == t.target_mask)
        .map(|t| {
            let emb = embeddings[t.emb_idx].clone();
            let flattened = w.restrict(&emb).expect("ambient masks restrict");
            PatternInstance {
                embedding: emb,
                flattened,
                matched: p.clone(),
                iso: t.iso.clone(),
            }
        })
        .collect()
}

/// True iff w contains none of the ten forbidden patterns.
pub fn avoids_forbidden(w: &WeylElement) -> bool {
    cached_sweep(w.system()).avoids(w.mask())
}

/// The first forbidden pattern occurrence, if any.
pub fn first_forbidden(w: &WeylElement) -> Option<PatternInstance> {
    cached_sweep(w.system()).first_match(w)
}

/// Avoidance under the widened isomorphism reading; see
/// [`PatternSweep::avoids_loose`].
pub fn loose_avoids_forbidden(w: &WeylElement) -> bool {
    cached_sweep(w.system()).avoids_loose(w.mask())
}

/// Non-separable elements all of whose proper flattenings are separable.
/// These are exactly the patterns a non-separable element must contain.
pub fn minimal_nonseparable(
    s: &Arc<RootSystem>,
    limits: &EnumLimits,
) -> Result<Vec<WeylElement>> {
    let group = WeylGroup::enumerate(s, limits)?;
    let mut proper = Vec::new();
    for k in 2..s.rank() {
        proper.extend(s.enumerate_subsystems(k)?);
    }
    let mut out = Vec::new();
    for e in group.elements() {
        if is_separable(e) {
            continue;
        }
        let minimal = proper.iter().all(|emb| {
            let flat = e.restrict(emb).expect("ambient masks restrict");
            is_separable(&flat)
        });
        if minimal {
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// Canonical name of an element that IS one of the forbidden patterns, i.e.
/// matches a member of the set on a system of the same type, up to a
/// Cartan-preserving relabeling. Used to report minimal-pattern sweeps.
pub fn canonical_pattern_name(w: &WeylElement) -> Option<String> {
    for p in forbidden_set() {
        if w.system().cartan_type() != p.system.cartan_type() {
            continue;
        }
        for iso in all_matrix_bijections(w.system().cartan_matrix(), p.system.cartan_matrix()) {
            let mut transported: Mask = 0;
            let mut ok = true;
            let mut m = w.mask();
            while m != 0 {
                let r = m.trailing_zeros() as usize;
                m &= m - 1;
                let coeffs = w.system().positive_roots()[r].coeffs();
                let mut target = vec![0i64; coeffs.len()];
                for (k, &c) in coeffs.iter().enumerate() {
                    target[iso[k]] = c;
                }
                match p.system.root_index(&Root::new(target)) {
                    Some(idx) => transported |= 1 << idx,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && transported == p.element.mask() {
                return Some(p.name.clone());
            }
        }
    }
    None
}

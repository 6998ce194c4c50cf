//! Exhaustive verification sweeps, each packaged as a deterministic
//! pass/fail report: the product identity for rank generating functions at
//! separable elements, the pattern-avoidance characterization, parabolic
//! fiber polynomials, longest-quotient order ideals, closure of the
//! separable set under the longest element, decomposition of full-support
//! roots in types D and E, and the inversion-coloring facts that drive the
//! classification of avoiders.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde_json::json;

use crate::cartan::Family;
use crate::patterns::avoids_forbidden;
use crate::qpoly::QPolynomial;
use crate::rootsys::RootSystem;
use crate::separable::is_separable;
use crate::weyl::{
    parabolic_decompose, simple_subset_bits, EnumLimits, Mask, WeylElement, WeylGroup,
};
use crate::{Error, Result};

/// Outcome of one verification sweep. `pass` holds exactly when the
/// counterexample list is empty; counterexamples are collected in canonical
/// order, so reports are reproducible run to run (wall time aside).
#[derive(Debug, Clone)]
pub struct VerificationReport {
    claim: String,
    system: String,
    population: usize,
    counterexamples: Vec<serde_json::Value>,
    millis: u64,
}

impl VerificationReport {
    fn finish(
        claim: String,
        system: &RootSystem,
        population: usize,
        counterexamples: Vec<serde_json::Value>,
        start: Instant,
    ) -> VerificationReport {
        VerificationReport {
            claim,
            system: system.cartan_type().to_string(),
            population,
            counterexamples,
            millis: start.elapsed().as_millis() as u64,
        }
    }

    pub fn claim(&self) -> &str {
        &self.claim
    }

    /// Cartan type the sweep ran over, e.g. "B2".
    pub fn system(&self) -> &str {
        &self.system
    }

    /// Number of cases examined (elements, fibers, subsets, root/simple
    /// pairs — whichever the claim quantifies over).
    pub fn population(&self) -> usize {
        self.population
    }

    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn counterexamples(&self) -> &[serde_json::Value] {
        &self.counterexamples
    }

    pub fn millis(&self) -> u64 {
        self.millis
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "claim": self.claim,
            "type": self.system,
            "population": self.population,
            "pass": self.pass(),
            "counterexamples": self.counterexamples,
            "millis": self.millis,
        })
    }
}

/// Masks of enumerable groups always fit: E8 is refused by the guard and
/// every other type has at most 63 positive roots.
fn mask_u64(mask: Mask) -> u64 {
    u64::try_from(mask).expect("inversion mask exceeds 64 bits")
}

fn element_json(w: &WeylElement) -> serde_json::Value {
    json!({
        "mask": mask_u64(w.mask()),
        "word": w.word().iter().map(|&i| u64::from(i) + 1).collect::<Vec<_>>(),
    })
}

/// Σ q^{ℓ(u)} over elements whose inversion set is contained in `mask`.
fn lower_poly(group: &WeylGroup, mask: Mask) -> Result<QPolynomial> {
    QPolynomial::rank_gen(
        group
            .elements()
            .iter()
            .filter(|u| u.mask() & mask == u.mask())
            .map(|u| u.length()),
        0,
    )
}

/// Σ q^{ℓ(u) − offset} over elements whose inversion set contains `mask`.
fn upper_poly(group: &WeylGroup, mask: Mask, offset: usize) -> Result<QPolynomial> {
    QPolynomial::rank_gen(
        group
            .elements()
            .iter()
            .filter(|u| u.mask() & mask == mask)
            .map(|u| u.length()),
        offset,
    )
}

/// For every separable element w, the rank generating functions of the
/// weak-order ideal below w and the filter above it are symmetric, unimodal,
/// and multiply to the rank generating function of the whole group.
pub fn check_main_theorem(
    system: &Arc<RootSystem>,
    limits: &EnumLimits,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let group = WeylGroup::enumerate(system, limits)?;
    let whole = QPolynomial::rank_gen(group.elements().iter().map(|w| w.length()), 0)?;
    let mut counterexamples = Vec::new();
    let mut population = 0usize;
    for w in group.elements() {
        if !is_separable(w) {
            continue;
        }
        population += 1;
        let lower = lower_poly(&group, w.mask())?;
        let upper = upper_poly(&group, w.mask(), w.length())?;
        let ok = lower.is_symmetric()
            && lower.is_unimodal()
            && upper.is_symmetric()
            && upper.is_unimodal()
            && &lower * &upper == whole;
        if !ok {
            let mut c = element_json(w);
            c["lower"] = lower.to_json();
            c["upper"] = upper.to_json();
            counterexamples.push(c);
        }
    }
    Ok(VerificationReport::finish(
        "main".to_string(),
        system,
        population,
        counterexamples,
        start,
    ))
}

/// Separability coincides with avoidance of the forbidden patterns on every
/// element of the group.
pub fn check_pattern_theorem(
    system: &Arc<RootSystem>,
    limits: &EnumLimits,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let group = WeylGroup::enumerate(system, limits)?;
    let mut counterexamples = Vec::new();
    for w in group.elements() {
        let sep = is_separable(w);
        let avoids = avoids_forbidden(w);
        if sep != avoids {
            let mut c = element_json(w);
            c["separable"] = json!(sep);
            c["avoids"] = json!(avoids);
            counterexamples.push(c);
        }
    }
    Ok(VerificationReport::finish(
        "patterns".to_string(),
        system,
        group.len(),
        counterexamples,
        start,
    ))
}

/// The fibers of restriction to the standard parabolic on `j` all carry the
/// same length polynomial: the exact quotient of the two rank generating
/// functions, which also equals the rank generating function of the minimal
/// coset representatives and is symmetric and unimodal.
pub fn check_fiber_lemma(
    system: &Arc<RootSystem>,
    j: &[usize],
    limits: &EnumLimits,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let group = WeylGroup::enumerate(system, limits)?;
    let live = simple_subset_bits(system, j)?;
    let mask_j = system.roots_in_simple_subset(live);
    let whole = QPolynomial::rank_gen(group.elements().iter().map(|w| w.length()), 0)?;
    let sub = lower_poly(&group, mask_j)?;
    let expected = whole.divide_exact(&sub)?;
    let quotient_poly = QPolynomial::rank_gen(
        group.parabolic_quotient(j)?.iter().map(|w| w.length()),
        0,
    )?;
    let mut counterexamples = Vec::new();
    if expected != quotient_poly || !expected.is_symmetric() || !expected.is_unimodal() {
        counterexamples.push(json!({
            "expected": expected.to_json(),
            "quotient": quotient_poly.to_json(),
        }));
    }
    // Fibers keyed by the inversion mask of the parabolic part, child-side,
    // in canonical mask order.
    let mut fibers: BTreeMap<(u32, u128), Vec<usize>> = BTreeMap::new();
    for w in group.elements() {
        let (key, coset_length) = if j.is_empty() {
            (0, w.length())
        } else {
            let (quotient, part) = parabolic_decompose(w, j)?;
            (part.mask(), quotient.length())
        };
        fibers
            .entry((key.count_ones(), key.reverse_bits()))
            .or_default()
            .push(coset_length);
    }
    let sub_order = group
        .elements()
        .iter()
        .filter(|u| u.mask() & mask_j == u.mask())
        .count();
    if fibers.len() != sub_order {
        counterexamples.push(json!({
            "fibers": fibers.len(),
            "subgroup_order": sub_order,
        }));
    }
    let population = fibers.len();
    for ((_, rev), lengths) in &fibers {
        let poly = QPolynomial::rank_gen(lengths.iter().copied(), 0)?;
        if poly != expected {
            counterexamples.push(json!({
                "fiber": mask_u64(rev.reverse_bits()),
                "poly": poly.to_json(),
                "expected": expected.to_json(),
            }));
        }
    }
    let shown: Vec<String> = j.iter().map(|&i| (i + 1).to_string()).collect();
    Ok(VerificationReport::finish(
        format!("fibers J={{{}}}", shown.join(",")),
        system,
        population,
        counterexamples,
        start,
    ))
}

/// For every subset J of the simple roots: the weak-order ideal below the
/// longest minimal coset representative is exactly the set of minimal coset
/// representatives; lengths are additive across the parabolic decomposition;
/// and the ideal/filter polynomials at that element multiply to the rank
/// generating function of the group.
pub fn check_w0j(system: &Arc<RootSystem>, limits: &EnumLimits) -> Result<VerificationReport> {
    let start = Instant::now();
    let group = WeylGroup::enumerate(system, limits)?;
    let whole = QPolynomial::rank_gen(group.elements().iter().map(|w| w.length()), 0)?;
    let rank = system.rank();
    let mut counterexamples = Vec::new();
    for bits in 0..(1u32 << rank) {
        let j: Vec<usize> = (0..rank).filter(|&i| bits >> i & 1 == 1).collect();
        let shown: Vec<u64> = j.iter().map(|&i| i as u64 + 1).collect();
        let quotient = group.parabolic_quotient(&j)?;
        let top = *quotient
            .iter()
            .max_by_key(|w| w.length())
            .expect("quotient contains the identity");
        if quotient
            .iter()
            .filter(|w| w.length() == top.length())
            .count()
            != 1
        {
            counterexamples.push(json!({
                "j": shown,
                "reason": "longest minimal coset representative is not unique",
            }));
            continue;
        }
        let ideal: Vec<Mask> = group.lower_ideal(top)?.iter().map(|w| w.mask()).collect();
        let reps: Vec<Mask> = quotient.iter().map(|w| w.mask()).collect();
        if ideal != reps {
            counterexamples.push(json!({
                "j": shown,
                "reason": "ideal below the longest representative differs from the quotient",
                "element": element_json(top),
            }));
        }
        if !j.is_empty() {
            for w in group.elements() {
                let (q, p) = parabolic_decompose(w, &j)?;
                if q.length() + p.length() != w.length() {
                    counterexamples.push(json!({
                        "j": shown,
                        "reason": "length is not additive across the decomposition",
                        "element": element_json(w),
                    }));
                    break;
                }
            }
        }
        let lower = lower_poly(&group, top.mask())?;
        let upper = upper_poly(&group, top.mask(), top.length())?;
        if &lower * &upper != whole {
            counterexamples.push(json!({
                "j": shown,
                "reason": "ideal and filter polynomials do not multiply to the group polynomial",
                "element": element_json(top),
            }));
        }
    }
    Ok(VerificationReport::finish(
        "w0j".to_string(),
        system,
        1usize << rank,
        counterexamples,
        start,
    ))
}

/// The separable set is closed under complementation by the longest element.
pub fn check_symmetry_prop(
    system: &Arc<RootSystem>,
    limits: &EnumLimits,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let group = WeylGroup::enumerate(system, limits)?;
    let mut counterexamples = Vec::new();
    for w in group.elements() {
        if is_separable(w) != is_separable(&w.complement_w0()) {
            counterexamples.push(element_json(w));
        }
    }
    Ok(VerificationReport::finish(
        "symmetry".to_string(),
        system,
        group.len(),
        counterexamples,
        start,
    ))
}

/// Which systems the full-support decomposition sweep accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionMode {
    /// Types D (rank ≥ 4) and E, where every full-support root decomposes.
    Strict,
    /// Any irreducible simply-laced system; running type A this way exhibits
    /// the full-support roots that admit no decomposition.
    Permissive,
}

/// Every positive root r of full support, paired with any simple root α_i,
/// splits as either r = β₁ + β₂ with α_i in both supports, or
/// r = α + β + γ with (α,β) = (β,γ) = −1, (α,γ) = 0 and α_i in the support
/// of β. Works at the root level; no group enumeration.
pub fn check_decomposition_lemma(
    system: &Arc<RootSystem>,
    mode: DecompositionMode,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let t = system.cartan_type();
    let accepted = match mode {
        DecompositionMode::Strict => {
            system.is_irreducible()
                && matches!(t.components()[..], [(Family::D, _)] | [(Family::E, _)])
        }
        DecompositionMode::Permissive => system.is_irreducible() && t.is_simply_laced(),
    };
    if !accepted {
        let need = match mode {
            DecompositionMode::Strict => "an irreducible system of type D or E",
            DecompositionMode::Permissive => "an irreducible simply-laced system",
        };
        return Err(Error::WrongType(format!(
            "the decomposition sweep needs {need}; got {t}"
        )));
    }
    let pos = system.positive_roots();
    let m = pos.len();
    // All roots have squared length 2 here, so pairings are integers.
    let mut gram = vec![vec![0i64; m]; m];
    for a in 0..m {
        for b in 0..m {
            let v = system.bilinear(&pos[a], &pos[b])?;
            debug_assert!(v.is_integer());
            gram[a][b] = v.to_integer();
        }
    }
    // Case (1): simples lying in both supports of some two-term splitting.
    let mut pair_cover = vec![0u128; m];
    for &(a, b, total) in system.sum_pairs() {
        pair_cover[total] |= system.support_bits(a) & system.support_bits(b);
    }
    // Case (2): supports of the middle root over all chain triples
    // α + β + γ = r with (α,β) = (β,γ) = −1, (α,γ) = 0.
    let mut triple_cover = vec![0u128; m];
    for a in 0..m {
        for b in 0..m {
            if gram[a][b] != -1 {
                continue;
            }
            for c in 0..m {
                if gram[b][c] != -1 || gram[a][c] != 0 {
                    continue;
                }
                let sum: Vec<i64> = (0..system.rank())
                    .map(|i| pos[a].coeffs()[i] + pos[b].coeffs()[i] + pos[c].coeffs()[i])
                    .collect();
                if let Some(total) = system.root_index(&crate::rootsys::Root::new(sum)) {
                    triple_cover[total] |= system.support_bits(b);
                }
            }
        }
    }
    let full = (1u128 << system.rank()) - 1;
    let mut counterexamples = Vec::new();
    let mut population = 0usize;
    for (r, root) in pos.iter().enumerate() {
        if system.support_bits(r) != full {
            continue;
        }
        population += system.rank();
        let covered = pair_cover[r] | triple_cover[r];
        for i in 0..system.rank() {
            if covered & (1 << i) == 0 {
                counterexamples.push(json!({
                    "root": root.coeffs(),
                    "simple": i + 1,
                }));
            }
        }
    }
    let claim = match mode {
        DecompositionMode::Strict => "decomposition".to_string(),
        DecompositionMode::Permissive => "decomposition-permissive".to_string(),
    };
    Ok(VerificationReport::finish(
        claim,
        system,
        population,
        counterexamples,
        start,
    ))
}

/// Which coloring fact to sweep. "Color" of a positive root under w is its
/// membership bit in the inversion set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorCheck {
    /// Simply laced: for roots α, β, γ with (α,β) = (β,γ) = −1 and
    /// (α,γ) = 0, whenever β, α+β, β+γ are colored alike by an avoider,
    /// α+β+γ matches them.
    TripleClosure,
    /// Simply laced: every avoider has a simple root whose small roots are
    /// uniformly colored — pivot existence in disguise.
    SmallRootPivot,
    /// Type B: every avoider colors each positive root like the small root
    /// with the same support.
    HatPair,
}

pub fn check_color_lemma(
    system: &Arc<RootSystem>,
    which: ColorCheck,
    limits: &EnumLimits,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let t = system.cartan_type();
    match which {
        ColorCheck::TripleClosure | ColorCheck::SmallRootPivot => {
            if !system.is_irreducible() || !t.is_simply_laced() {
                return Err(Error::WrongType(format!(
                    "this coloring sweep needs an irreducible simply-laced system; got {t}"
                )));
            }
        }
        ColorCheck::HatPair => {
            if !matches!(t.components()[..], [(Family::B, _)]) {
                return Err(Error::WrongType(format!(
                    "the support-pair coloring sweep needs a system of type B; got {t}"
                )));
            }
        }
    }
    let group = WeylGroup::enumerate(system, limits)?;
    let pos = system.positive_roots();
    let m = pos.len();
    let mut counterexamples = Vec::new();
    let mut population = 0usize;
    let color = |mask: Mask, i: usize| mask >> i & 1;
    match which {
        ColorCheck::TripleClosure => {
            // Chain triples, recorded once per unordered {α,γ} as index
            // tuples (β, α+β, β+γ, α+β+γ).
            let mut gram = vec![vec![0i64; m]; m];
            for a in 0..m {
                for b in 0..m {
                    let v = system.bilinear(&pos[a], &pos[b])?;
                    debug_assert!(v.is_integer());
                    gram[a][b] = v.to_integer();
                }
            }
            let add = |a: usize, b: usize| -> usize {
                let sum: Vec<i64> = (0..system.rank())
                    .map(|i| pos[a].coeffs()[i] + pos[b].coeffs()[i])
                    .collect();
                system
                    .root_index(&crate::rootsys::Root::new(sum))
                    .expect("a pairing of −1 makes the sum a root")
            };
            let mut tuples = Vec::new();
            for a in 0..m {
                for b in 0..m {
                    if gram[a][b] != -1 {
                        continue;
                    }
                    for c in a + 1..m {
                        if gram[b][c] != -1 || gram[a][c] != 0 {
                            continue;
                        }
                        let ab = add(a, b);
                        let bc = add(b, c);
                        tuples.push((b, ab, bc, add(ab, c)));
                    }
                }
            }
            for w in group.elements() {
                if !avoids_forbidden(w) {
                    continue;
                }
                population += 1;
                let mask = w.mask();
                for &(b, ab, bc, abc) in &tuples {
                    let side = color(mask, b);
                    if color(mask, ab) == side
                        && color(mask, bc) == side
                        && color(mask, abc) != side
                    {
                        let mut c = element_json(w);
                        c["middle"] = json!(pos[b].coeffs());
                        c["total"] = json!(pos[abc].coeffs());
                        counterexamples.push(c);
                        break;
                    }
                }
            }
        }
        ColorCheck::SmallRootPivot => {
            let mut small_on = vec![0u128; system.rank()];
            for (idx, r) in pos.iter().enumerate() {
                if r.is_small()? {
                    for i in r.support()? {
                        small_on[i] |= 1 << idx;
                    }
                }
            }
            for w in group.elements() {
                if !avoids_forbidden(w) {
                    continue;
                }
                population += 1;
                let mask = w.mask();
                let uniform = (0..system.rank())
                    .any(|i| mask & small_on[i] == 0 || mask & small_on[i] == small_on[i]);
                if !uniform {
                    counterexamples.push(element_json(w));
                }
            }
        }
        ColorCheck::HatPair => {
            let hat: Vec<usize> = pos
                .iter()
                .map(|r| {
                    let h = system.same_support_small_root(r)?;
                    Ok(system.root_index(&h).expect("the hat root is positive"))
                })
                .collect::<Result<_>>()?;
            for w in group.elements() {
                if !avoids_forbidden(w) {
                    continue;
                }
                population += 1;
                let mask = w.mask();
                if let Some(i) = (0..m).find(|&i| color(mask, i) != color(mask, hat[i])) {
                    let mut c = element_json(w);
                    c["root"] = json!(pos[i].coeffs());
                    counterexamples.push(c);
                }
            }
        }
    }
    let claim = match which {
        ColorCheck::TripleClosure => "colors-triple-closure",
        ColorCheck::SmallRootPivot => "colors-small-root-pivot",
        ColorCheck::HatPair => "colors-hat-pair",
    };
    Ok(VerificationReport::finish(
        claim.to_string(),
        system,
        population,
        counterexamples,
        start,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;
    use crate::weyl::full_mask;

    fn sys(name: &str) -> Arc<RootSystem> {
        RootSystem::build(&CartanType::parse(name).unwrap()).unwrap()
    }

    fn limits() -> EnumLimits {
        EnumLimits::default()
    }

    #[test]
    fn product_identity_holds_in_small_groups() {
        for name in ["A1", "A3", "B2", "B3", "G2"] {
            let report = check_main_theorem(&sys(name), &limits()).unwrap();
            assert!(report.pass(), "{name}: {:?}", report.counterexamples());
            assert!(report.population() > 0);
        }
    }

    #[test]
    fn product_identity_example_with_one_inversion() {
        let s = sys("B2");
        let group = WeylGroup::enumerate(&s, &limits()).unwrap();
        let w = WeylElement::from_word(&s, &[0]).unwrap();
        let lower = lower_poly(&group, w.mask()).unwrap();
        let upper = upper_poly(&group, w.mask(), w.length()).unwrap();
        assert_eq!(lower, QPolynomial::q_int(2));
        assert_eq!(upper, QPolynomial::q_int(4));
        let whole = QPolynomial::rank_gen(group.elements().iter().map(|u| u.length()), 0).unwrap();
        assert_eq!(&lower * &upper, whole);
    }

    #[test]
    fn product_identity_population_counts_separable_elements() {
        let report = check_main_theorem(&sys("B2"), &limits()).unwrap();
        assert_eq!(report.population(), 6);
        let report = check_main_theorem(&sys("G2"), &limits()).unwrap();
        assert_eq!(report.population(), 6);
    }

    #[test]
    fn pattern_characterization_holds_in_small_groups() {
        for name in ["A3", "B2", "B3", "G2", "D4"] {
            let report = check_pattern_theorem(&sys(name), &limits()).unwrap();
            assert!(report.pass(), "{name}: {:?}", report.counterexamples());
        }
    }

    #[test]
    fn fiber_polynomials_in_rank_two() {
        let report = check_fiber_lemma(&sys("A2"), &[0], &limits()).unwrap();
        assert!(report.pass(), "{:?}", report.counterexamples());
        assert_eq!(report.population(), 2);

        let s = sys("B2");
        let report = check_fiber_lemma(&s, &[1], &limits()).unwrap();
        assert!(report.pass(), "{:?}", report.counterexamples());
        // The common fiber polynomial is the exact quotient 1+q+q²+q³.
        let group = WeylGroup::enumerate(&s, &limits()).unwrap();
        let whole = QPolynomial::rank_gen(group.elements().iter().map(|u| u.length()), 0).unwrap();
        let expected = whole.divide_exact(&QPolynomial::q_int(2)).unwrap();
        assert_eq!(expected, QPolynomial::q_int(4));
    }

    #[test]
    fn fiber_sweep_covers_degenerate_subsets() {
        let s = sys("B2");
        // J = Δ: one fiber per element, each polynomial 1.
        let report = check_fiber_lemma(&s, &[0, 1], &limits()).unwrap();
        assert!(report.pass());
        assert_eq!(report.population(), 8);
        // J = ∅: a single fiber carrying the whole group.
        let report = check_fiber_lemma(&s, &[], &limits()).unwrap();
        assert!(report.pass());
        assert_eq!(report.population(), 1);
    }

    #[test]
    fn fiber_sweep_matches_all_maximal_subsets_of_b3() {
        for i in 0..3 {
            let j: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let report = check_fiber_lemma(&sys("B3"), &j, &limits()).unwrap();
            assert!(report.pass(), "J omitting {i}: {:?}", report.counterexamples());
        }
    }

    #[test]
    fn longest_quotient_representatives_in_small_groups() {
        for name in ["A2", "B2", "B3", "G2"] {
            let report = check_w0j(&sys(name), &limits()).unwrap();
            assert!(report.pass(), "{name}: {:?}", report.counterexamples());
            assert_eq!(report.population(), 1 << sys(name).rank());
        }
    }

    #[test]
    fn complement_closure_in_small_groups() {
        for name in ["A3", "B2", "G2"] {
            let report = check_symmetry_prop(&sys(name), &limits()).unwrap();
            assert!(report.pass(), "{name}: {:?}", report.counterexamples());
        }
    }

    #[test]
    fn decomposition_holds_in_types_d_and_e() {
        for name in ["D4", "D5", "E6"] {
            let report = check_decomposition_lemma(&sys(name), DecompositionMode::Strict).unwrap();
            assert!(report.pass(), "{name}: {:?}", report.counterexamples());
            assert!(report.population() > 0);
        }
    }

    #[test]
    fn decomposition_rejects_types_outside_d_and_e() {
        assert!(matches!(
            check_decomposition_lemma(&sys("A3"), DecompositionMode::Strict),
            Err(Error::WrongType(_))
        ));
        assert!(matches!(
            check_decomposition_lemma(&sys("B3"), DecompositionMode::Permissive),
            Err(Error::WrongType(_))
        ));
        assert!(matches!(
            check_decomposition_lemma(&sys("A2xA1"), DecompositionMode::Permissive),
            Err(Error::WrongType(_))
        ));
    }

    #[test]
    fn permissive_decomposition_isolates_the_type_a_failures() {
        let report =
            check_decomposition_lemma(&sys("A3"), DecompositionMode::Permissive).unwrap();
        assert!(!report.pass());
        let got: Vec<String> = report
            .counterexamples()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(
            got,
            vec![
                json!({"root": [1, 1, 1], "simple": 1}).to_string(),
                json!({"root": [1, 1, 1], "simple": 3}).to_string(),
            ]
        );
    }

    #[test]
    fn triple_closure_holds_for_avoiders() {
        for name in ["A3", "D4"] {
            let report =
                check_color_lemma(&sys(name), ColorCheck::TripleClosure, &limits()).unwrap();
            assert!(report.pass(), "{name}: {:?}", report.counterexamples());
            assert!(report.population() > 0);
        }
        assert!(matches!(
            check_color_lemma(&sys("B3"), ColorCheck::TripleClosure, &limits()),
            Err(Error::WrongType(_))
        ));
    }

    #[test]
    fn small_root_pivot_exists_for_avoiders() {
        for name in ["A3", "D4"] {
            let report =
                check_color_lemma(&sys(name), ColorCheck::SmallRootPivot, &limits()).unwrap();
            assert!(report.pass(), "{name}: {:?}", report.counterexamples());
        }
        assert!(matches!(
            check_color_lemma(&sys("B3"), ColorCheck::SmallRootPivot, &limits()),
            Err(Error::WrongType(_))
        ));
    }

    #[test]
    fn support_pairs_are_colored_alike_in_type_b() {
        for name in ["B2", "B3"] {
            let report = check_color_lemma(&sys(name), ColorCheck::HatPair, &limits()).unwrap();
            assert!(report.pass(), "{name}: {:?}", report.counterexamples());
        }
        for name in ["A3", "D4"] {
            assert!(matches!(
                check_color_lemma(&sys(name), ColorCheck::HatPair, &limits()),
                Err(Error::WrongType(_))
            ));
        }
    }

    #[test]
    fn report_json_shape() {
        let report = check_pattern_theorem(&sys("A2"), &limits()).unwrap();
        let v = report.to_json();
        assert_eq!(v["claim"], "patterns");
        assert_eq!(v["type"], "A2");
        assert_eq!(v["population"], 6);
        assert_eq!(v["pass"], true);
        assert!(v["counterexamples"].as_array().unwrap().is_empty());
        assert!(v["millis"].is_u64());
        assert_eq!(report.pass(), report.counterexamples().is_empty());
    }

    #[test]
    fn ideal_and_filter_polynomials_are_masks_of_the_longest_element() {
        // Sanity on the helpers themselves: at w0 the ideal is everything and
        // the filter is the single top element.
        let s = sys("B2");
        let group = WeylGroup::enumerate(&s, &limits()).unwrap();
        let top = full_mask(&s);
        let lower = lower_poly(&group, top).unwrap();
        let whole = QPolynomial::rank_gen(group.elements().iter().map(|u| u.length()), 0).unwrap();
        assert_eq!(lower, whole);
        let upper = upper_poly(&group, top, group.longest().length()).unwrap();
        assert_eq!(upper, QPolynomial::one());
    }
}

//! Finite root systems with exact arithmetic.
//!
//! Roots live in the simple-root basis as integer coefficient vectors, so a
//! positive root has all coefficients ≥ 0 and a negative root all ≤ 0. The
//! invariant bilinear form is a rational matrix normalized so that long roots
//! have squared length 2 in every irreducible component. Positive roots are
//! kept in a canonical order: by height ascending, ties broken
//! lexicographically on the coefficient vector.

use crate::cartan::{irreducible_types_of_rank, CartanType};
use crate::linalg::{self, rat, Rat};
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

/// A root as an integer coefficient vector over the simple roots of its
/// ambient system. Both signs are representable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Root {
    coeffs: Vec<i64>,
}

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Root {
        Root { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    /// Sum of coefficients. Defined for positive roots only.
    pub fn height(&self) -> Result<i64> {
        if !self.is_positive() {
            return Err(Error::NotPositive);
        }
        Ok(self.coeffs.iter().sum())
    }

    /// Indices of the simple roots appearing with nonzero coefficient.
    pub fn support(&self) -> Result<Vec<usize>> {
        if !self.is_positive() {
            return Err(Error::NotPositive);
        }
        Ok((0..self.coeffs.len())
            .filter(|&i| self.coeffs[i] != 0)
            .collect())
    }

    /// A root is small when every coefficient is 0 or 1.
    pub fn is_small(&self) -> Result<bool> {
        if !self.is_positive() {
            return Err(Error::NotPositive);
        }
        Ok(self.coeffs.iter().all(|&c| c == 0 || c == 1))
    }

    fn negated(&self) -> Root {
        Root::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

/// A finite root system: Cartan data plus the canonical positive-root list
/// and the precomputed tables everything else runs on. Immutable after
/// construction; shared via `Arc`.
#[derive(Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    bilinear: Vec<Vec<Rat>>,
    positives: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    /// Index of α_i in `positives`.
    alpha_index: Vec<usize>,
    /// `simple_action[i][j]`: index of s_i(β_j) for β_j ≠ α_i; α_i maps to
    /// its own index (the sign flip is the caller's business).
    simple_action: Vec<Vec<usize>>,
    /// Triples (j, k, l) with j < k and β_j + β_k = β_l.
    sum_pairs: Vec<(usize, usize, usize)>,
    /// Bitset over simple indices of each positive root's support.
    support_bits: Vec<u128>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan_type == other.cartan_type
            && self.positives == other.positives
            && self.bilinear == other.bilinear
    }
}
impl Eq for RootSystem {}

impl RootSystem {
    /// Construct the canonical root system of a Cartan type. Positive roots
    /// are generated by closing the simple roots under simple reflections.
    pub fn build(t: &CartanType) -> Result<Arc<RootSystem>> {
        let rank = t.rank();
        let cartan = t.cartan_matrix();
        let norms = t.simple_norms();
        let mut bilinear = vec![vec![Rat::zero(); rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                // (α_i, α_j) = A[i][j] (α_j, α_j) / 2
                bilinear[i][j] = rat(cartan[i][j]) * norms[j] / rat(2);
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                if bilinear[i][j] != bilinear[j][i] {
                    return Err(Error::NotRootSystem("asymmetric bilinear form".into()));
                }
            }
        }

        let expected = t.positive_count();
        if expected > 128 {
            return Err(Error::InvalidInput(format!(
                "positive root count {expected} exceeds the 128-bit mask capacity"
            )));
        }

        // Reflection closure upward from the simple roots.
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..rank {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            seen.insert(v.clone());
            queue.push(v);
        }
        while let Some(v) = queue.pop() {
            for i in 0..rank {
                let w = reflect_vec(&cartan, i, &v);
                if w.iter().all(|&c| c >= 0) && !seen.contains(&w) {
                    if seen.len() >= expected {
                        return Err(Error::NotRootSystem(
                            "reflection closure exceeded the expected root count".into(),
                        ));
                    }
                    seen.insert(w.clone());
                    queue.push(w);
                }
            }
        }
        if seen.len() != expected {
            return Err(Error::NotRootSystem(format!(
                "closure found {} positive roots, expected {expected}",
                seen.len()
            )));
        }
        let positives: Vec<Root> = seen.into_iter().map(Root::new).collect();
        Ok(Arc::new(Self::finalize(
            t.clone(),
            cartan,
            bilinear,
            positives,
        )?))
    }

    /// Assemble a system from explicit parts; sorts the positives into
    /// canonical order and builds all lookup tables.
    fn finalize(
        cartan_type: CartanType,
        cartan: Vec<Vec<i64>>,
        bilinear: Vec<Vec<Rat>>,
        mut positives: Vec<Root>,
    ) -> Result<RootSystem> {
        let rank = cartan.len();
        positives.sort_by_key(|r| (r.coeffs.iter().sum::<i64>(), r.coeffs.clone()));
        let index: HashMap<Vec<i64>, usize> = positives
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coeffs.clone(), i))
            .collect();
        if index.len() != positives.len() {
            return Err(Error::NotRootSystem("duplicate positive roots".into()));
        }

        let mut alpha_index = vec![0usize; rank];
        for i in 0..rank {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            alpha_index[i] = *index
                .get(&v)
                .ok_or_else(|| Error::NotRootSystem("missing simple root".into()))?;
        }

        let mut simple_action = vec![vec![0usize; positives.len()]; rank];
        for i in 0..rank {
            for (j, r) in positives.iter().enumerate() {
                if j == alpha_index[i] {
                    simple_action[i][j] = j;
                    continue;
                }
                let image = reflect_vec(&cartan, i, &r.coeffs);
                simple_action[i][j] = *index.get(&image).ok_or_else(|| {
                    Error::NotRootSystem("reflection left the positive system".into())
                })?;
            }
        }

        let mut sum_pairs = Vec::new();
        for j in 0..positives.len() {
            for k in (j + 1)..positives.len() {
                let sum: Vec<i64> = positives[j]
                    .coeffs
                    .iter()
                    .zip(&positives[k].coeffs)
                    .map(|(a, b)| a + b)
                    .collect();
                if let Some(&l) = index.get(&sum) {
                    sum_pairs.push((j, k, l));
                }
            }
        }

        let support_bits = positives
            .iter()
            .map(|r| {
                r.coeffs
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c != 0)
                    .fold(0u128, |acc, (i, _)| acc | (1u128 << i))
            })
            .collect();

        Ok(RootSystem {
            cartan_type,
            rank,
            cartan,
            bilinear,
            positives,
            index,
            alpha_index,
            simple_action,
            sum_pairs,
            support_bits,
        })
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positives
    }

    pub fn positive_count(&self) -> usize {
        self.positives.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn is_irreducible(&self) -> bool {
        self.cartan_type.is_irreducible()
    }

    /// Index of a positive root in the canonical order.
    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(&r.coeffs).copied()
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positives[self.alpha_index[i]]
    }

    /// Index of α_i in the canonical positive order.
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.alpha_index[i]
    }

    pub(crate) fn simple_action_index(&self, i: usize, root_idx: usize) -> usize {
        self.simple_action[i][root_idx]
    }

    pub(crate) fn sum_pairs(&self) -> &[(usize, usize, usize)] {
        &self.sum_pairs
    }

    pub(crate) fn support_bits(&self, root_idx: usize) -> u128 {
        self.support_bits[root_idx]
    }

    fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(&r.coeffs) || self.index.contains_key(&r.negated().coeffs)
    }

    /// The invariant bilinear form, defined on any two roots of this system.
    pub fn bilinear(&self, a: &Root, b: &Root) -> Result<Rat> {
        if !self.is_root(a) || !self.is_root(b) {
            return Err(Error::ForeignRoot);
        }
        Ok(self.bilinear_raw(&a.coeffs, &b.coeffs))
    }

    fn bilinear_raw(&self, a: &[i64], b: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    acc += rat(a[i] * b[j]) * self.bilinear[i][j];
                }
            }
        }
        acc
    }

    /// β ≤ γ in the root poset: γ − β is a nonnegative combination of simple
    /// roots. Both arguments must be positive roots of this system.
    pub fn root_poset_leq(&self, beta: &Root, gamma: &Root) -> Result<bool> {
        if self.root_index(beta).is_none() || self.root_index(gamma).is_none() {
            return Err(Error::ForeignRoot);
        }
        Ok(beta
            .coeffs
            .iter()
            .zip(&gamma.coeffs)
            .all(|(b, g)| g - b >= 0))
    }

    /// Apply the simple reflection s_i to an arbitrary coefficient vector.
    pub fn reflect_simple(&self, i: usize, r: &Root) -> Root {
        Root::new(reflect_vec(&self.cartan, i, &r.coeffs))
    }

    /// Indices of `{β ∈ Φ+ : β ≥ α_i}` — equivalently the positive roots whose
    /// i-th coefficient is nonzero. In a reducible system this is the dual
    /// ideal within the component containing α_i.
    pub fn dual_ideal_above_simple(&self, i: usize) -> Result<Vec<usize>> {
        if i >= self.rank {
            return Err(Error::InvalidInput(format!(
                "simple index {i} out of range for rank {}",
                self.rank
            )));
        }
        Ok((0..self.positives.len())
            .filter(|&j| self.positives[j].coeffs[i] > 0)
            .collect())
    }

    /// Bitmask over positive roots supported inside the given set of simples.
    pub(crate) fn roots_in_simple_subset(&self, live: u128) -> u128 {
        let mut mask = 0u128;
        for j in 0..self.positives.len() {
            if self.support_bits[j] & !live == 0 {
                mask |= 1u128 << j;
            }
        }
        mask
    }

    /// Bitmask of `{β : supp(β) ⊆ live, coefficient of α_i > 0}`.
    pub(crate) fn dual_ideal_mask(&self, live: u128, i: usize) -> u128 {
        let mut mask = 0u128;
        for j in 0..self.positives.len() {
            if self.support_bits[j] & !live == 0 && self.positives[j].coeffs[i] > 0 {
                mask |= 1u128 << j;
            }
        }
        mask
    }

    /// Connected components of the Dynkin diagram restricted to a set of
    /// simple indices, each returned as a bitset, ordered by smallest member.
    pub(crate) fn components_of_subset(&self, live: u128) -> Vec<u128> {
        let mut comps = Vec::new();
        let mut remaining = live;
        while remaining != 0 {
            let start = remaining.trailing_zeros() as usize;
            let mut comp = 1u128 << start;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in 0..self.rank {
                    if remaining & (1 << u) != 0
                        && comp & (1 << u) == 0
                        && self.cartan[v][u] != 0
                    {
                        comp |= 1 << u;
                        stack.push(u);
                    }
                }
            }
            comps.push(comp);
            remaining &= !comp;
        }
        comps
    }

    /// Recover the Cartan type from the Cartan matrix by matching each
    /// diagram component against the classification, up to relabeling.
    pub fn classify(&self) -> Result<CartanType> {
        classify_cartan(&self.cartan)
    }

    /// The parabolic subsystem spanned by the simple roots indexed by `j`.
    pub fn parabolic(self: &Arc<Self>, j: &[usize]) -> Result<SubsystemEmbedding> {
        let mut j: Vec<usize> = j.to_vec();
        j.sort_unstable();
        j.dedup();
        if j.iter().any(|&i| i >= self.rank) {
            return Err(Error::InvalidInput(
                "parabolic index out of range".to_string(),
            ));
        }
        let cartan: Vec<Vec<i64>> = j
            .iter()
            .map(|&a| j.iter().map(|&b| self.cartan[a][b]).collect())
            .collect();
        let bilinear: Vec<Vec<Rat>> = j
            .iter()
            .map(|&a| j.iter().map(|&b| self.bilinear[a][b]).collect())
            .collect();
        let live = j.iter().fold(0u128, |acc, &i| acc | (1 << i));
        let mut tagged: Vec<(Vec<i64>, usize)> = Vec::new();
        for (idx, r) in self.positives.iter().enumerate() {
            if self.support_bits[idx] & !live == 0 {
                let child: Vec<i64> = j.iter().map(|&a| r.coeffs[a]).collect();
                tagged.push((child, idx));
            }
        }
        let cartan_type = classify_cartan(&cartan)?;
        let (child, root_map) = finalize_child(cartan_type, cartan, bilinear, tagged)?;
        let span_basis: Vec<Vec<i64>> = j
            .iter()
            .map(|&a| {
                let mut v = vec![0i64; self.rank];
                v[a] = 1;
                v
            })
            .collect();
        // Child simple a is α_{j[a]}; restriction keeps J's ascending order.
        let simple_map = j.iter().map(|&a| self.alpha_index[a]).collect();
        Ok(SubsystemEmbedding {
            parent: Arc::clone(self),
            child,
            root_map,
            simple_map,
            span_basis,
        })
    }

    /// The subsystem `Φ ∩ U` for `U` the span of the given roots, as a root
    /// system in its own right together with the embedding data.
    pub fn subsystem_from_subspace(self: &Arc<Self>, spanning: &[Root]) -> Result<SubsystemEmbedding> {
        for r in spanning {
            if !self.is_root(r) {
                return Err(Error::ForeignRoot);
            }
        }
        let rows: Vec<Vec<Rat>> = spanning
            .iter()
            .map(|r| linalg::to_rat_vec(&r.coeffs))
            .collect();
        let basis = linalg::rref(rows);
        self.subsystem_from_basis(&basis)
    }

    fn subsystem_from_basis(self: &Arc<Self>, basis: &[Vec<Rat>]) -> Result<SubsystemEmbedding> {
        let member_indices: Vec<usize> = (0..self.positives.len())
            .filter(|&i| linalg::in_span(basis, &linalg::to_rat_vec(&self.positives[i].coeffs)))
            .collect();
        let members: HashSet<&[i64]> = member_indices
            .iter()
            .map(|&i| self.positives[i].coeffs.as_slice())
            .collect();

        // Simple roots of the child: members not expressible as a sum of two
        // members. Ordered by descending lex on parent coefficients so that a
        // span of simple roots reproduces the parabolic embedding exactly.
        let mut simple_parent_idx = Vec::new();
        'outer: for &i in &member_indices {
            for &a in &member_indices {
                if a == i {
                    continue;
                }
                let diff: Vec<i64> = self.positives[i]
                    .coeffs
                    .iter()
                    .zip(&self.positives[a].coeffs)
                    .map(|(x, y)| x - y)
                    .collect();
                if members.contains(diff.as_slice()) {
                    continue 'outer;
                }
            }
            simple_parent_idx.push(i);
        }
        simple_parent_idx.sort_by(|&a, &b| self.positives[b].coeffs.cmp(&self.positives[a].coeffs));
        let k = simple_parent_idx.len();
        let simples: Vec<Vec<Rat>> = simple_parent_idx
            .iter()
            .map(|&i| linalg::to_rat_vec(&self.positives[i].coeffs))
            .collect();

        let mut tagged = Vec::with_capacity(member_indices.len());
        for &i in &member_indices {
            let coords = linalg::solve_coords(&simples, &linalg::to_rat_vec(&self.positives[i].coeffs))
                .ok_or_else(|| Error::NotRootSystem("member outside simple span".into()))?;
            if !coords.iter().all(linalg::is_nonneg_integer) {
                return Err(Error::NotRootSystem(
                    "member is not a nonnegative integer combination of child simples".into(),
                ));
            }
            let child: Vec<i64> = coords.iter().map(|c| c.to_integer()).collect();
            tagged.push((child, i));
        }

        let mut bilinear = vec![vec![Rat::zero(); k]; k];
        for a in 0..k {
            for b in 0..k {
                bilinear[a][b] = self.bilinear_raw(
                    &self.positives[simple_parent_idx[a]].coeffs,
                    &self.positives[simple_parent_idx[b]].coeffs,
                );
            }
        }
        let mut cartan = vec![vec![0i64; k]; k];
        for a in 0..k {
            for b in 0..k {
                let entry = rat(2) * bilinear[a][b] / bilinear[b][b];
                if !entry.is_integer() {
                    return Err(Error::NotRootSystem("non-integral Cartan entry".into()));
                }
                cartan[a][b] = entry.to_integer();
            }
        }
        let cartan_type = classify_cartan(&cartan)?;
        let (child, root_map) = finalize_child(cartan_type, cartan, bilinear, tagged)?;
        Ok(SubsystemEmbedding {
            parent: Arc::clone(self),
            child,
            root_map,
            simple_map: simple_parent_idx,
            span_basis: linalg::integer_basis(basis),
        })
    }

    /// All distinct subsystems obtained as spans of k-subsets of positive
    /// roots whose intersection with the system has rank exactly k,
    /// deduplicated by subspace and ordered by canonical span basis.
    pub fn enumerate_subsystems(self: &Arc<Self>, k: usize) -> Result<Vec<SubsystemEmbedding>> {
        if k == 0 {
            return Err(Error::InvalidInput("subsystem rank must be ≥ 1".into()));
        }
        let n = self.positives.len();
        if k > self.rank {
            return Ok(Vec::new());
        }
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
        let mut found: Vec<(Vec<Vec<i64>>, Vec<Vec<Rat>>)> = Vec::new();
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let rows: Vec<Vec<Rat>> = combo
                .iter()
                .map(|&i| linalg::to_rat_vec(&self.positives[i].coeffs))
                .collect();
            let basis = linalg::rref(rows);
            if basis.len() == k {
                let key = linalg::integer_basis(&basis);
                if seen.insert(key.clone()) {
                    found.push((key, basis));
                }
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        found
            .into_iter()
            .map(|(_, basis)| self.subsystem_from_basis(&basis))
            .collect()
    }

    /// The irreducible components as parabolic embeddings, ordered by
    /// smallest simple index.
    pub fn irreducible_components(self: &Arc<Self>) -> Vec<SubsystemEmbedding> {
        let all = if self.rank == 0 {
            0u128
        } else {
            (1u128 << self.rank) - 1
        };
        self.components_of_subset(all)
            .into_iter()
            .map(|comp| {
                let j: Vec<usize> = (0..self.rank).filter(|&i| comp & (1 << i) != 0).collect();
                self.parabolic(&j).expect("component indices are in range")
            })
            .collect()
    }

    /// The small root with the same support as `β`, when one exists.
    pub fn same_support_small_root(&self, beta: &Root) -> Result<Root> {
        if self.root_index(beta).is_none() {
            return Err(Error::ForeignRoot);
        }
        let hat = Root::new(
            beta.coeffs
                .iter()
                .map(|&c| if c != 0 { 1 } else { 0 })
                .collect(),
        );
        if self.root_index(&hat).is_none() {
            return Err(Error::InvalidInput(
                "no small root with the given support".to_string(),
            ));
        }
        Ok(hat)
    }
}

/// Advance a k-combination of {0,…,n−1} in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] != i + n - k {
            combo[i] += 1;
            for j in (i + 1)..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Apply s_i to a coefficient vector: β ↦ β − (Σ_j c_j A[j][i]) α_i.
fn reflect_vec(cartan: &[Vec<i64>], i: usize, coeffs: &[i64]) -> Vec<i64> {
    let pairing: i64 = coeffs
        .iter()
        .enumerate()
        .map(|(j, &c)| c * cartan[j][i])
        .sum();
    let mut out = coeffs.to_vec();
    out[i] -= pairing;
    out
}

/// Match a Cartan matrix against the classification, component by component.
pub fn classify_cartan(cartan: &[Vec<i64>]) -> Result<CartanType> {
    let rank = cartan.len();
    // Connected components of the underlying graph.
    let mut comp_of = vec![usize::MAX; rank];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..rank {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut nodes = vec![start];
        comp_of[start] = id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in 0..rank {
                if comp_of[u] == usize::MAX && cartan[v][u] != 0 {
                    comp_of[u] = id;
                    nodes.push(u);
                    stack.push(u);
                }
            }
        }
        nodes.sort_unstable();
        comps.push(nodes);
    }
    let mut parts = Vec::new();
    for nodes in comps {
        parts.push(classify_component(cartan, &nodes)?);
    }
    Ok(CartanType::sum(parts))
}

fn classify_component(cartan: &[Vec<i64>], nodes: &[usize]) -> Result<CartanType> {
    let r = nodes.len();
    let sub: Vec<Vec<i64>> = nodes
        .iter()
        .map(|&a| nodes.iter().map(|&b| cartan[a][b]).collect())
        .collect();
    for t in irreducible_types_of_rank(r) {
        let canon = t.cartan_matrix();
        if find_matrix_bijection(&sub, &canon).is_some() {
            return Ok(t);
        }
    }
    Err(Error::NotRootSystem(
        "Cartan matrix component matches no finite type".to_string(),
    ))
}

/// A bijection σ with `a[i][j] == b[σ(i)][σ(j)]` for all i, j, if one exists.
/// Backtracking over assignments, pruned by row multisets.
pub(crate) fn find_matrix_bijection(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let row_profile = |m: &[Vec<i64>], i: usize| -> (i64, Vec<i64>) {
        let mut off: Vec<i64> = (0..n).filter(|&j| j != i).map(|j| m[i][j]).collect();
        off.sort_unstable();
        (m[i][i], off)
    };
    let pa: Vec<_> = (0..n).map(|i| row_profile(a, i)).collect();
    let pb: Vec<_> = (0..n).map(|i| row_profile(b, i)).collect();
    {
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
    }
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        a: &[Vec<i64>],
        b: &[Vec<i64>],
        pa: &[(i64, Vec<i64>)],
        pb: &[(i64, Vec<i64>)],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        i: usize,
    ) -> bool {
        let n = a.len();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || pa[i] != pb[cand] {
                continue;
            }
            let mut ok = true;
            for prev in 0..i {
                if a[i][prev] != b[cand][sigma[prev]] || a[prev][i] != b[sigma[prev]][cand] {
                    ok = false;
                    break;
                }
            }
            if ok {
                sigma[i] = cand;
                used[cand] = true;
                if go(a, b, pa, pb, sigma, used, i + 1) {
                    return true;
                }
                used[cand] = false;
                sigma[i] = usize::MAX;
            }
        }
        false
    }
    if go(a, b, &pa, &pb, &mut sigma, &mut used, 0) {
        Some(sigma)
    } else {
        None
    }
}

/// All Cartan-matrix-preserving bijections from system `a`'s simples to
/// system `b`'s simples, in lexicographic order.
pub(crate) fn all_matrix_bijections(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        a: &[Vec<i64>],
        b: &[Vec<i64>],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        i: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = a.len();
        if i == n {
            out.push(sigma.clone());
            return;
        }
        for cand in 0..n {
            if used[cand] || a[i][i] != b[cand][cand] {
                continue;
            }
            let mut ok = true;
            for prev in 0..i {
                if a[i][prev] != b[cand][sigma[prev]] || a[prev][i] != b[sigma[prev]][cand] {
                    ok = false;
                    break;
                }
            }
            if ok {
                sigma[i] = cand;
                used[cand] = true;
                go(a, b, sigma, used, i + 1, out);
                used[cand] = false;
                sigma[i] = usize::MAX;
            }
        }
    }
    go(a, b, &mut sigma, &mut used, 0, &mut out);
    out
}

fn finalize_child(
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    bilinear: Vec<Vec<Rat>>,
    mut tagged: Vec<(Vec<i64>, usize)>,
) -> Result<(Arc<RootSystem>, Vec<usize>)> {
    tagged.sort_by_key(|(coeffs, _)| (coeffs.iter().sum::<i64>(), coeffs.clone()));
    let root_map: Vec<usize> = tagged.iter().map(|&(_, p)| p).collect();
    let positives: Vec<Root> = tagged.into_iter().map(|(c, _)| Root::new(c)).collect();
    let sys = RootSystem::finalize(cartan_type, cartan, bilinear, positives)?;
    Ok((Arc::new(sys), root_map))
}

/// A subsystem `Φ′ = Φ ∩ U` of a parent system, as a root system in its own
/// right plus the index map back into the parent's positive roots.
#[derive(Clone, Debug)]
pub struct SubsystemEmbedding {
    parent: Arc<RootSystem>,
    child: Arc<RootSystem>,
    /// Child positive index → parent positive index.
    root_map: Vec<usize>,
    /// Child simple index → parent positive index.
    simple_map: Vec<usize>,
    /// Canonical integer row basis of U in parent simple coordinates.
    span_basis: Vec<Vec<i64>>,
}

impl SubsystemEmbedding {
    pub fn parent(&self) -> &Arc<RootSystem> {
        &self.parent
    }

    pub fn child(&self) -> &Arc<RootSystem> {
        &self.child
    }

    pub fn root_map(&self) -> &[usize] {
        &self.root_map
    }

    pub fn simple_map(&self) -> &[usize] {
        &self.simple_map
    }

    pub fn span_basis(&self) -> &[Vec<i64>] {
        &self.span_basis
    }

    /// Bitmask over parent positives of the child's image.
    pub fn parent_mask(&self) -> u128 {
        self.root_map.iter().fold(0u128, |acc, &p| acc | (1 << p))
    }
}

/// The length-preserving bijection between the positive roots of B_n and C_n
/// induced by the shared ambient coordinates: `±e_i ± e_j` maps to itself and
/// `e_i` maps to `2e_i`. Returns (B_n, C_n, map from B index to C index).
pub fn b_to_c_root_map(n: usize) -> Result<(Arc<RootSystem>, Arc<RootSystem>, Vec<usize>)> {
    use crate::cartan::Family;
    if n < 3 {
        return Err(Error::InvalidInput(
            "the B/C transport needs rank ≥ 3".to_string(),
        ));
    }
    let b = RootSystem::build(&CartanType::irreducible(Family::B, n)?)?;
    let c = RootSystem::build(&CartanType::irreducible(Family::C, n)?)?;

    // Coordinate realizations: rows are simple roots in e-coordinates.
    let mut real_b = vec![vec![0i64; n]; n];
    let mut real_c = vec![vec![0i64; n]; n];
    for i in 0..n - 1 {
        real_b[i][i] = 1;
        real_b[i][i + 1] = -1;
        real_c[i][i] = 1;
        real_c[i][i + 1] = -1;
    }
    real_b[n - 1][n - 1] = 1; // α_n = e_n
    real_c[n - 1][n - 1] = 2; // α_n = 2e_n

    let to_e = |real: &Vec<Vec<i64>>, coeffs: &[i64]| -> Vec<i64> {
        let mut v = vec![0i64; n];
        for (i, &ci) in coeffs.iter().enumerate() {
            for k in 0..n {
                v[k] += ci * real[i][k];
            }
        }
        v
    };
    let c_index: HashMap<Vec<i64>, usize> = c
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| (to_e(&real_c, r.coeffs()), i))
        .collect();
    let mut map = Vec::with_capacity(b.positive_count());
    for r in b.positive_roots() {
        let mut e = to_e(&real_b, r.coeffs());
        let nonzero = e.iter().filter(|&&x| x != 0).count();
        if nonzero == 1 {
            for x in e.iter_mut() {
                *x *= 2;
            }
        }
        let ci = *c_index
            .get(&e)
            .ok_or_else(|| Error::NotRootSystem("transport image is not a C root".into()))?;
        map.push(ci);
    }
    Ok((b, c, map))
}

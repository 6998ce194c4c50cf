//! Cartan types of the Cartan–Killing classification and their defining data.
//!
//! An irreducible type is a family letter plus a rank: `A_n` (n ≥ 1),
//! `B_n` (n ≥ 2), `C_n` (n ≥ 3, with C2 identified with B2), `D_n` (n ≥ 4),
//! `E6`–`E8`, `F4`, `G2`. A reducible type is an unordered sum of irreducible
//! ones, kept in a canonical sorted order.

use crate::linalg::Rat;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Family letter of an irreducible Cartan type.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

/// A Cartan type: either irreducible or a canonical (sorted) sum of
/// irreducible components. `Sum(vec![])` is the empty (rank-0) type.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CartanType {
    Irreducible(Family, usize),
    Sum(Vec<CartanType>),
}

impl CartanType {
    /// Validated irreducible type. C2 is normalized to B2; everything outside
    /// the classification is rejected.
    pub fn irreducible(family: Family, rank: usize) -> Result<CartanType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::UnknownCartanType(format!(
                "{}{}",
                family.letter(),
                rank
            )));
        }
        if family == Family::C && rank == 2 {
            return Ok(CartanType::Irreducible(Family::B, 2));
        }
        Ok(CartanType::Irreducible(family, rank))
    }

    /// Sum of components, flattened and sorted; a singleton collapses to the
    /// irreducible type itself.
    pub fn sum(parts: Vec<CartanType>) -> CartanType {
        let mut comps: Vec<(Family, usize)> = Vec::new();
        for p in parts {
            comps.extend(p.components());
        }
        comps.sort();
        if comps.len() == 1 {
            let (f, n) = comps[0];
            return CartanType::Irreducible(f, n);
        }
        CartanType::Sum(
            comps
                .into_iter()
                .map(|(f, n)| CartanType::Irreducible(f, n))
                .collect(),
        )
    }

    /// Flat sorted list of irreducible components.
    pub fn components(&self) -> Vec<(Family, usize)> {
        match self {
            CartanType::Irreducible(f, n) => vec![(*f, *n)],
            CartanType::Sum(parts) => parts.iter().flat_map(|p| p.components()).collect(),
        }
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self, CartanType::Irreducible(..))
    }

    pub fn rank(&self) -> usize {
        self.components().iter().map(|&(_, n)| n).sum()
    }

    /// Number of positive roots.
    pub fn positive_count(&self) -> usize {
        self.components()
            .iter()
            .map(|&(f, n)| match f {
                Family::A => n * (n + 1) / 2,
                Family::B | Family::C => n * n,
                Family::D => n * (n - 1),
                Family::E => match n {
                    6 => 36,
                    7 => 63,
                    _ => 120,
                },
                Family::F => 24,
                Family::G => 6,
            })
            .sum()
    }

    /// Order of the Weyl group.
    pub fn group_order(&self) -> u128 {
        fn factorial(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        self.components()
            .iter()
            .map(|&(f, n)| match f {
                Family::A => factorial(n + 1),
                Family::B | Family::C => (1u128 << n) * factorial(n),
                Family::D => (1u128 << (n - 1)) * factorial(n),
                Family::E => match n {
                    6 => 51_840,
                    7 => 2_903_040,
                    _ => 696_729_600,
                },
                Family::F => 1_152,
                Family::G => 12,
            })
            .product()
    }

    /// True when every component is of type A, D, or E (all roots one length).
    pub fn is_simply_laced(&self) -> bool {
        self.components()
            .iter()
            .all(|&(f, _)| matches!(f, Family::A | Family::D | Family::E))
    }

    pub fn contains_family(&self, family: Family, rank: usize) -> bool {
        self.components().contains(&(family, rank))
    }

    /// Cartan matrix `A[i][j] = 2(α_i,α_j)/(α_j,α_j)` in the canonical simple
    /// ordering, block-diagonal over components.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let comps = self.components();
        let rank = self.rank();
        let mut a = vec![vec![0i64; rank]; rank];
        let mut off = 0;
        for &(f, n) in &comps {
            let block = irreducible_cartan_matrix(f, n);
            for i in 0..n {
                for j in 0..n {
                    a[off + i][off + j] = block[i][j];
                }
            }
            off += n;
        }
        a
    }

    /// Squared lengths `(α_i, α_i)`, with long roots normalized to 2 in every
    /// irreducible component.
    pub fn simple_norms(&self) -> Vec<Rat> {
        self.components()
            .iter()
            .flat_map(|&(f, n)| irreducible_norms(f, n))
            .collect()
    }

    /// Parse strings like `"B3"`, `"g2"`, or `"A2xA1"`.
    pub fn parse(s: &str) -> Result<CartanType> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::UnknownCartanType(s.to_string()));
        }
        let mut parts = Vec::new();
        for piece in s.split(['x', 'X', '+']) {
            let piece = piece.trim();
            let mut chars = piece.chars();
            let letter = chars
                .next()
                .and_then(Family::from_letter)
                .ok_or_else(|| Error::UnknownCartanType(piece.to_string()))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::UnknownCartanType(piece.to_string()))?;
            parts.push(CartanType::irreducible(letter, rank)?);
        }
        Ok(CartanType::sum(parts))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components();
        if comps.is_empty() {
            return write!(f, "trivial");
        }
        let names: Vec<String> = comps
            .iter()
            .map(|&(fam, n)| format!("{}{}", fam.letter(), n))
            .collect();
        write!(f, "{}", names.join("x"))
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        if s == "trivial" {
            return Ok(CartanType::Sum(vec![]));
        }
        CartanType::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Edges of the Dynkin diagram of an irreducible type, as index pairs.
pub(crate) fn irreducible_edges(f: Family, n: usize) -> Vec<(usize, usize)> {
    match f {
        Family::A | Family::B | Family::C => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        Family::D => {
            // Chain 0..n-2 with the last node attached to node n-3.
            let mut e: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 1));
            e
        }
        Family::E => {
            // Bourbaki: node 1 hangs off node 3 of the chain 0-2-3-4-5[-6[-7]].
            let mut e = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
            if n >= 7 {
                e.push((5, 6));
            }
            if n == 8 {
                e.push((6, 7));
            }
            e
        }
        Family::F => vec![(0, 1), (1, 2), (2, 3)],
        Family::G => vec![(0, 1)],
    }
}

fn irreducible_cartan_matrix(f: Family, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    for (i, j) in irreducible_edges(f, n) {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    // Multiple edges: A[i][j] = 2(α_i,α_j)/(α_j,α_j), so the -2/-3 entry sits
    // in the row of the long root, column of the short root.
    match f {
        Family::B => a[n - 2][n - 1] = -2, // α_{n-1} long, α_n short
        Family::C => a[n - 1][n - 2] = -2, // α_n long, α_{n-1} short
        Family::F => a[1][2] = -2,         // α1,α2 long; α3,α4 short
        Family::G => a[0][1] = -3,         // α1 long, α2 short
        _ => {}
    }
    a
}

fn irreducible_norms(f: Family, n: usize) -> Vec<Rat> {
    let two = Rat::from_integer(2);
    let one = Rat::from_integer(1);
    match f {
        Family::A | Family::D | Family::E => vec![two; n],
        Family::B => {
            let mut v = vec![two; n];
            v[n - 1] = one;
            v
        }
        Family::C => {
            let mut v = vec![one; n];
            v[n - 1] = two;
            v
        }
        Family::F => vec![two, two, one, one],
        Family::G => vec![two, Rat::new(2, 3)],
    }
}

/// All irreducible types of exactly the given rank, in canonical order.
pub fn irreducible_types_of_rank(rank: usize) -> Vec<CartanType> {
    let mut out = Vec::new();
    for f in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
        if let Ok(t) = CartanType::irreducible(f, rank) {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out
}

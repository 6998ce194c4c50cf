//! Polynomials in q with arbitrary-precision integer coefficients, as used
//! for rank generating functions of graded posets.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::Mul;

/// Dense coefficient list, lowest degree first, trailing zeros trimmed.
/// The zero polynomial is the empty list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> QPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> QPolynomial {
        QPolynomial { coeffs: vec![] }
    }

    pub fn one() -> QPolynomial {
        QPolynomial::from_i64(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Sum of coefficients — the value at q = 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Palindromic coefficient list: a_i = a_{d−i}.
    pub fn is_symmetric(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Weakly increasing, then weakly decreasing.
    pub fn is_unimodal(&self) -> bool {
        let n = self.coeffs.len();
        let mut i = 0;
        while i + 1 < n && self.coeffs[i] <= self.coeffs[i + 1] {
            i += 1;
        }
        while i + 1 < n && self.coeffs[i] >= self.coeffs[i + 1] {
            i += 1;
        }
        i + 1 >= n.max(1)
    }

    /// The rank generating function Σ q^{ℓ − offset} over the given lengths.
    /// Errors if any length is below the offset.
    pub fn rank_gen(lengths: impl IntoIterator<Item = usize>, offset: usize) -> Result<QPolynomial> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for l in lengths {
            let d = l.checked_sub(offset).ok_or_else(|| {
                Error::InvalidInput(format!("length {l} is below the offset {offset}"))
            })?;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigInt::zero());
            }
            coeffs[d] += 1;
        }
        Ok(QPolynomial::new(coeffs))
    }

    /// Exact division over ℤ[q]; errors with "not divisible" when the
    /// quotient does not exist with integer coefficients.
    pub fn divide_exact(&self, divisor: &QPolynomial) -> Result<QPolynomial> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible);
        }
        if self.is_zero() {
            return Ok(QPolynomial::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        let nd = self.coeffs.len() - 1;
        if nd < dd {
            return Err(Error::NotDivisible);
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            if !(top.clone() % lead).is_zero() {
                return Err(Error::NotDivisible);
            }
            let q = top / lead;
            for i in 0..=dd {
                let sub = &q * &divisor.coeffs[i];
                rem[k + i] -= sub;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(QPolynomial::new(quot))
    }

    /// The q-integer [n]_q = 1 + q + … + q^{n−1}.
    pub fn q_int(n: usize) -> QPolynomial {
        QPolynomial::new(vec![BigInt::one(); n])
    }

    /// The q-factorial [n]_q! = Π_{k=1..n} [k]_q.
    pub fn q_factorial(n: usize) -> QPolynomial {
        (1..=n).fold(QPolynomial::one(), |acc, k| &acc * &QPolynomial::q_int(k))
    }

    /// Serialize as `{"coeffs": [...]}` with plain integer entries.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coeffs": self
                .coeffs
                .iter()
                .map(|c| {
                    i64::try_from(c).map(serde_json::Value::from).unwrap_or_else(
                        |_| serde_json::Value::String(c.to_string()),
                    )
                })
                .collect::<Vec<_>>(),
        })
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if i == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn q_int_and_factorial() {
        assert_eq!(QPolynomial::q_int(3), QPolynomial::from_i64(&[1, 1, 1]));
        // [3]_q! = (1)(1+q)(1+q+q^2) = 1 + 2q + 2q^2 + q^3
        assert_eq!(
            QPolynomial::q_factorial(3),
            QPolynomial::from_i64(&[1, 2, 2, 1])
        );
        assert_eq!(QPolynomial::q_factorial(0), QPolynomial::one());
        let s4: i64 = 24;
        assert_eq!(
            QPolynomial::q_factorial(4).eval_at_one(),
            BigInt::from(s4)
        );
    }

    #[test]
    fn symmetry_and_unimodality() {
        assert!(QPolynomial::from_i64(&[1, 2, 2, 1]).is_symmetric());
        assert!(QPolynomial::from_i64(&[1, 2, 2, 1]).is_unimodal());
        assert!(!QPolynomial::from_i64(&[1, 2, 1, 2]).is_unimodal());
        assert!(!QPolynomial::from_i64(&[2, 1, 2]).is_unimodal());
        assert!(QPolynomial::from_i64(&[1, 1, 5, 1]).is_unimodal());
        assert!(!QPolynomial::from_i64(&[1, 3, 2, 3]).is_symmetric());
        // Edge cases: zero and constants.
        assert!(QPolynomial::zero().is_symmetric());
        assert!(QPolynomial::zero().is_unimodal());
        assert!(QPolynomial::from_i64(&[7]).is_symmetric());
        assert!(QPolynomial::from_i64(&[7]).is_unimodal());
    }

    #[test]
    fn rank_gen_counts_by_length() {
        // Lengths of the 6 elements of S3: 0,1,1,2,2,3 → 1+2q+2q^2+q^3.
        let p = QPolynomial::rank_gen([0usize, 1, 1, 2, 2, 3], 0).unwrap();
        assert_eq!(p, QPolynomial::from_i64(&[1, 2, 2, 1]));
        let shifted = QPolynomial::rank_gen([2usize, 3, 3], 2).unwrap();
        assert_eq!(shifted, QPolynomial::from_i64(&[1, 2]));
        assert!(QPolynomial::rank_gen([1usize], 2).is_err());
    }

    #[test]
    fn division_is_exact_or_fails() {
        let w = QPolynomial::q_factorial(4);
        let j = QPolynomial::q_factorial(2);
        let q = w.divide_exact(&j).unwrap();
        assert_eq!(&q * &j, w);
        assert!(QPolynomial::from_i64(&[1, 1, 1])
            .divide_exact(&QPolynomial::from_i64(&[1, 1]))
            .is_err());
        assert!(QPolynomial::one()
            .divide_exact(&QPolynomial::zero())
            .is_err());
        // Divisor with leading coefficient > 1 dividing exactly.
        let a = QPolynomial::from_i64(&[2, 4]);
        let b = QPolynomial::from_i64(&[1, 2]);
        assert_eq!(a.divide_exact(&b).unwrap(), QPolynomial::from_i64(&[2]));
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = QPolynomial::from_i64(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(QPolynomial::from_i64(&[0, 0]).degree(), None);
    }

    #[test]
    fn display_formats() {
        assert_eq!(QPolynomial::from_i64(&[1, 2, 1]).to_string(), "1 + 2q + q^2");
        assert_eq!(QPolynomial::zero().to_string(), "0");
        assert_eq!(QPolynomial::from_i64(&[0, 1]).to_string(), "q");
    }

    #[test]
    fn json_shape() {
        let p = QPolynomial::from_i64(&[1, 2]);
        assert_eq!(p.to_json().to_string(), r#"{"coeffs":[1,2]}"#);
    }

    proptest! {
        // Convolution against the direct definition of coefficient sums.
        #[test]
        fn product_matches_direct_convolution(
            a in proptest::collection::vec(-50i64..50, 0..6),
            b in proptest::collection::vec(-50i64..50, 0..6),
        ) {
            let pa = QPolynomial::from_i64(&a);
            let pb = QPolynomial::from_i64(&b);
            let prod = &pa * &pb;
            for k in 0..(a.len() + b.len()) {
                let direct: i64 = (0..=k)
                    .map(|i| {
                        let x = a.get(i).copied().unwrap_or(0);
                        let y = if k - i < b.len() { b[k - i] } else { 0 };
                        x * y
                    })
                    .sum();
                prop_assert_eq!(prod.coeff(k), BigInt::from(direct));
            }
        }

        #[test]
        fn exact_division_round_trips(
            a in proptest::collection::vec(-9i64..10, 1..5),
            b in proptest::collection::vec(-9i64..10, 1..5),
        ) {
            let pa = QPolynomial::from_i64(&a);
            let pb = QPolynomial::from_i64(&b);
            prop_assume!(!pa.is_zero() && !pb.is_zero());
            let prod = &pa * &pb;
            let q = prod.divide_exact(&pb).unwrap();
            prop_assert_eq!(q, pa);
        }
    }
}

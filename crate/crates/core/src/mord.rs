//! The invariant set Mord and the lattice ideals `I_d ⊂ ℕⁿ`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::ExponentVector;
use crate::rational::{ceil_u32, floor_u32, nat, Rational};

/// A weakly increasing tuple of positive rationals, or the distinguished value `(0)`.
///
/// Tuples are ordered lexicographically; a proper prefix compares greater than its
/// extensions, so `(0)` is the minimum and the empty tuple the maximum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiOrder {
    entries: Vec<Rational>,
}

impl MultiOrder {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.len() == 1 && entries[0].is_zero() {
            return Ok(MultiOrder { entries });
        }
        if let Some(bad) = entries.iter().find(|q| !q.is_positive()) {
            return Err(Error::InvalidMultiOrder(alloc::format!("entry {bad} is not positive")));
        }
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMultiOrder("entries must be weakly increasing".to_string()));
        }
        Ok(MultiOrder { entries })
    }

    /// The invariant `(0)` of the unit ideal.
    pub fn zero() -> Self {
        MultiOrder { entries: vec![Rational::zero()] }
    }

    pub fn empty() -> Self {
        MultiOrder { entries: Vec::new() }
    }

    /// `(1, …, 1)` of length `c`.
    pub fn ones(c: usize) -> Self {
        MultiOrder { entries: vec![Rational::one(); c] }
    }

    pub fn from_integers(values: &[u32]) -> Result<Self> {
        Self::new(values.iter().map(|&v| nat(v)).collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(crate::parse::parse_rational_tuple(text)?)
    }

    pub fn is_zero_invariant(&self) -> bool {
        self.entries.len() == 1 && self.entries[0].is_zero()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The weights `w = d⁻¹`.
    pub fn weights(&self) -> Vec<Rational> {
        self.entries.iter().map(|d| d.recip()).collect()
    }

    /// `(1^c, self)`.
    pub fn with_leading_ones(&self, c: usize) -> Self {
        let mut entries = vec![Rational::one(); c];
        entries.extend(self.entries.iter().cloned());
        MultiOrder { entries }
    }

    /// Whether every entry equals 1.
    pub fn is_all_ones(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(One::is_one)
    }
}

impl PartialOrd for MultiOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        // Padding with +∞: the shorter tuple is greater.
        other.entries.len().cmp(&self.entries.len())
    }
}

impl fmt::Display for MultiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

impl core::str::FromStr for MultiOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Total order on multiorders.
pub fn mord_compare(a: &MultiOrder, b: &MultiOrder) -> Ordering {
    a.cmp(b)
}

/// A solution `a ∈ ℕ^i` of `Σ a_j/d_j = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub exponent: ExponentVector,
    /// Whether `a_i ≠ 0`.
    pub last_nonzero: bool,
}

fn solutions_eq_one(weights: &[Rational], d: &[Rational]) -> Vec<ExponentVector> {
    fn rec(
        j: usize,
        rem: Rational,
        weights: &[Rational],
        d: &[Rational],
        cur: &mut Vec<u32>,
        out: &mut Vec<ExponentVector>,
    ) {
        if j == weights.len() {
            if rem.is_zero() {
                out.push(ExponentVector::new(cur.clone()));
            }
            return;
        }
        let max = floor_u32(&(&rem * &d[j]));
        for a in 0..=max {
            let r = &rem - nat(a) * &weights[j];
            if r.is_negative() {
                break;
            }
            cur.push(a);
            rec(j + 1, r, weights, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, Rational::one(), weights, d, &mut Vec::new(), &mut out);
    out
}

/// All `a ∈ ℕ^i` with `Σ_{j≤i} a_j/d_j = 1`, each flagged by whether `a_i ≠ 0`.
pub fn witness_vectors(d: &MultiOrder, i: usize) -> Result<Vec<Witness>> {
    if i == 0 || i > d.len() || d.is_zero_invariant() {
        return Err(Error::IndexOutOfRange { index: i, len: d.len() });
    }
    let prefix = &d.entries[..i];
    let w: Vec<Rational> = prefix.iter().map(|q| q.recip()).collect();
    Ok(solutions_eq_one(&w, prefix)
        .into_iter()
        .map(|e| {
            let last_nonzero = e.get(i - 1) != 0;
            Witness { exponent: e, last_nonzero }
        })
        .collect())
}

/// Witness search for one index: some `a` with `a_i ≥ 1`.
fn has_witness(d: &[Rational], i: usize) -> bool {
    let w: Vec<Rational> = d[..=i].iter().map(|q| q.recip()).collect();
    // Fix a_i ≥ 1 and solve for the rest.
    let mut a_i = 1u32;
    loop {
        let rem = Rational::one() - nat(a_i) * &w[i];
        if rem.is_negative() {
            return false;
        }
        if !solutions_eq_one_rem(&w[..i], &d[..i], rem).is_empty() {
            return true;
        }
        a_i += 1;
    }
}

fn solutions_eq_one_rem(weights: &[Rational], d: &[Rational], target: Rational) -> Vec<ExponentVector> {
    if target.is_zero() {
        return vec![ExponentVector::zeros(weights.len())];
    }
    let scaled_d: Vec<Rational> = d.iter().map(|q| q * &target).collect();
    let scaled_w: Vec<Rational> = scaled_d.iter().map(|q| q.recip()).collect();
    solutions_eq_one(&scaled_w, &scaled_d)
}

/// Membership in Mord. The distinguished value `(0)` counts as a member.
pub fn is_in_mord(d: &MultiOrder) -> bool {
    if d.is_zero_invariant() {
        return true;
    }
    (0..d.len()).all(|i| has_witness(&d.entries, i))
}

/// First index (0-based) with no witness, if any.
fn violating_index(d: &MultiOrder) -> Option<usize> {
    if d.is_zero_invariant() {
        return None;
    }
    (0..d.len()).find(|&i| !has_witness(&d.entries, i))
}

/// `I_d = {a ∈ ℕⁿ : a·d⁻¹ ≥ 1}` with its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIdeal {
    d: MultiOrder,
    weights: Vec<Rational>,
    generators: Vec<ExponentVector>,
}

impl LatticeIdeal {
    pub fn new(d: &MultiOrder) -> Result<Self> {
        if d.is_zero_invariant() {
            return Err(Error::InvalidMultiOrder("(0) has no lattice ideal".to_string()));
        }
        let weights = d.weights();
        let generators = enumerate_minimal(&weights, d.entries());
        Ok(LatticeIdeal { d: d.clone(), weights, generators })
    }

    pub fn multiorder(&self) -> &MultiOrder {
        &self.d
    }

    pub fn arity(&self) -> usize {
        self.d.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn value(&self, a: &ExponentVector) -> Rational {
        a.dot(&self.weights)
    }

    pub fn contains(&self, a: &ExponentVector) -> Result<bool> {
        if a.arity() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: a.arity() });
        }
        Ok(self.value(a) >= Rational::one())
    }

    /// The finite antichain of minimal members, in lexicographically decreasing order.
    pub fn minimal_generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// `ℕⁿ \ I_d`, in lexicographically decreasing order.
    pub fn complement(&self) -> Vec<ExponentVector> {
        let mut out = Vec::new();
        below_one(&self.weights, self.d.entries(), &mut out);
        out
    }

    pub fn complement_count(&self) -> usize {
        self.complement().len()
    }

    /// Exponents on the face `a·d⁻¹ = 1`.
    pub fn face(&self) -> Vec<ExponentVector> {
        let mut v = solutions_eq_one(&self.weights, self.d.entries());
        v.sort_by(|a, b| b.cmp(a));
        v
    }
}

fn below_one(weights: &[Rational], d: &[Rational], out: &mut Vec<ExponentVector>) {
    fn rec(
        j: usize,
        rem: Rational,
        weights: &[Rational],
        d: &[Rational],
        cur: &mut Vec<u32>,
        out: &mut Vec<ExponentVector>,
    ) {
        if j == weights.len() {
            out.push(ExponentVector::new(cur.clone()));
            return;
        }
        let mut a = ceil_u32(&(&rem * &d[j]));
        // Largest a with a·w_j < rem.
        while a > 0 && nat(a) * &weights[j] >= rem {
            a -= 1;
        }
        for k in (0..=a).rev() {
            if nat(k) * &weights[j] >= rem {
                continue;
            }
            cur.push(k);
            rec(j + 1, &rem - nat(k) * &weights[j], weights, d, cur, out);
            cur.pop();
        }
    }
    rec(0, Rational::one(), weights, d, &mut Vec::new(), out);
}

fn enumerate_minimal(weights: &[Rational], d: &[Rational]) -> Vec<ExponentVector> {
    let n = weights.len();
    if n == 0 {
        return Vec::new();
    }
    // Every minimal generator lies in the box a_j ≤ ⌈d_j⌉, and a generator's last
    // coordinate is determined by its prefix.
    let mut out = Vec::new();
    let mut prefixes: Vec<(Vec<u32>, Rational)> = vec![(Vec::new(), Rational::zero())];
    for j in 0..n - 1 {
        let mut next = Vec::new();
        for (p, s) in prefixes {
            for a in 0..=ceil_u32(&d[j]) {
                let s2 = &s + nat(a) * &weights[j];
                let mut p2 = p.clone();
                p2.push(a);
                let stop = s2 >= Rational::one();
                next.push((p2, s2));
                if stop {
                    break;
                }
            }
        }
        prefixes = next;
    }
    let one = Rational::one();
    for (mut p, s) in prefixes {
        let last = if s >= one {
            0
        } else {
            ceil_u32(&((&one - &s) * &d[n - 1]))
        };
        p.push(last);
        let a = ExponentVector::new(p);
        if is_minimal(&a, weights) {
            out.push(a);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn is_minimal(a: &ExponentVector, weights: &[Rational]) -> bool {
    let one = Rational::one();
    if a.dot(weights) < one {
        return false;
    }
    (0..a.arity()).all(|j| {
        if a.get(j) == 0 {
            return true;
        }
        let mut b = a.clone();
        b.set(j, a.get(j) - 1);
        b.dot(weights) < one
    })
}

/// For `d ∉ Mord`, a strictly larger `d_ε` with `I_d ⊆ I_{d_ε}`; `None` when `d ∈ Mord`.
pub fn dominating_sequence(d: &MultiOrder) -> Result<Option<MultiOrder>> {
    if d.is_zero_invariant() {
        return Err(Error::InvalidMultiOrder("(0) has no lattice ideal".to_string()));
    }
    let Some(mut i) = violating_index(d) else {
        return Ok(None);
    };
    let e = d.entries();
    while i + 1 < e.len() && e[i + 1] == e[i] {
        i += 1;
    }
    let gens = LatticeIdeal::new(d)?.generators;
    let one = Rational::one();
    let d_n = e.last().cloned().unwrap_or_else(Rational::zero);
    for k in 0..64u32 {
        let eps = Rational::new(BigInt::one(), BigInt::one() << k);
        let mut entries: Vec<Rational> = e[..i].to_vec();
        entries.extend(core::iter::repeat_n(&e[i] + &eps, e.len() - i));
        let w: Vec<Rational> = entries.iter().map(|q| q.recip()).collect();
        if !gens.iter().all(|a| a.dot(&w) >= one) {
            continue;
        }
        let c = eps.recip();
        let corner = ceil_u32(&(&d_n + &c));
        let far = ExponentVector::new(vec![corner; e.len()]);
        if far.dot(&w) < one {
            continue;
        }
        return Ok(Some(MultiOrder::new(entries)?));
    }
    Err(Error::Internal("epsilon search did not terminate".to_string()))
}

/// `d = (1, …, 1, d_m, …, d_n)` split into the number of ones and `d_{>1}`.
pub fn split_mord_gt1(d: &MultiOrder) -> Result<(usize, MultiOrder)> {
    if d.is_zero_invariant() || !is_in_mord(d) {
        return Err(Error::NotInMord);
    }
    let ones = d.entries.iter().take_while(|q| q.is_one()).count();
    Ok((ones, MultiOrder { entries: d.entries[ones..].to_vec() }))
}

/// `e_i = d_i · Π_{j<i} (e_j − 1)!`, or `None` if some `e_i` is not a natural number.
///
/// Factorials are only formed for arguments up to `max_factorial`; larger values give
/// `Err(InvalidMultiOrder)`.
pub fn e_sequence(d: &MultiOrder, max_factorial: u32) -> Result<Option<Vec<BigInt>>> {
    let mut out = Vec::new();
    let mut prod = BigInt::one();
    let n = d.len();
    for (i, q) in d.entries().iter().enumerate() {
        let v = q * Rational::from_integer(prod.clone());
        if !v.is_integer() {
            return Ok(None);
        }
        let e = v.to_integer();
        if i + 1 == n {
            out.push(e);
            break;
        }
        let m = (&e - BigInt::one()).to_u32().ok_or_else(|| {
            Error::InvalidMultiOrder("e_i outside the factorial range".to_string())
        })?;
        if m > max_factorial {
            return Err(Error::InvalidMultiOrder("e_i outside the factorial range".to_string()));
        }
        prod *= (1..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
        out.push(e);
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn mo(v: &[(i64, i64)]) -> MultiOrder {
        MultiOrder::new(v.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn membership() {
        assert!(is_in_mord(&mo(&[(4, 1), (16, 3), (32, 5)])));
        assert!(!is_in_mord(&mo(&[(14, 5), (7, 2)])));
        assert!(is_in_mord(&MultiOrder::empty()));
        assert!(is_in_mord(&mo(&[(5, 1), (15, 2)])));
        assert!(!is_in_mord(&mo(&[(2, 1), (7, 3)])));
    }

    #[test]
    fn invalid_inputs() {
        assert!(MultiOrder::new(vec![int(3), int(2)]).is_err());
        assert!(MultiOrder::new(vec![int(-1)]).is_err());
        assert!(MultiOrder::new(vec![int(0), int(1)]).is_err());
    }

    #[test]
    fn witnesses() {
        let w = witness_vectors(&mo(&[(4, 1), (16, 3), (32, 5)]), 3).unwrap();
        let mut got: Vec<_> = w.iter().map(|x| x.exponent.clone()).collect();
        got.sort();
        let mut want = vec![ev(&[4, 0, 0]), ev(&[1, 4, 0]), ev(&[2, 1, 2]), ev(&[0, 2, 4])];
        want.sort();
        assert_eq!(got, want);
        let w = witness_vectors(&mo(&[(5, 1), (7, 1)]), 2).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(witness_vectors(&mo(&[(1, 1)]), 1).unwrap()[0].exponent, ev(&[1]));
        assert!(witness_vectors(&mo(&[(1, 1)]), 2).is_err());
    }

    #[test]
    fn comparison() {
        assert_eq!(mord_compare(&mo(&[(5, 1), (7, 1)]), &mo(&[(5, 1), (15, 2)])), Ordering::Less);
        assert_eq!(mord_compare(&MultiOrder::zero(), &mo(&[(1, 1), (1, 1)])), Ordering::Less);
        assert_eq!(mord_compare(&mo(&[(1, 1)]), &mo(&[(1, 1), (1, 1)])), Ordering::Greater);
    }

    #[test]
    fn generators() {
        let l = LatticeIdeal::new(&mo(&[(5, 1), (7, 1)])).unwrap();
        assert_eq!(
            l.minimal_generators(),
            &[ev(&[5, 0]), ev(&[4, 2]), ev(&[3, 3]), ev(&[2, 5]), ev(&[1, 6]), ev(&[0, 7])]
        );
        let l = LatticeIdeal::new(&mo(&[(5, 1), (15, 2)])).unwrap();
        assert_eq!(
            l.minimal_generators(),
            &[ev(&[5, 0]), ev(&[4, 2]), ev(&[3, 3]), ev(&[2, 5]), ev(&[1, 6]), ev(&[0, 8])]
        );
        assert_eq!(LatticeIdeal::new(&mo(&[(2, 1)])).unwrap().minimal_generators(), &[ev(&[2])]);
    }

    #[test]
    fn complements() {
        assert_eq!(LatticeIdeal::new(&mo(&[(2, 1)])).unwrap().complement_count(), 2);
        assert_eq!(LatticeIdeal::new(&mo(&[(5, 1), (7, 1)])).unwrap().complement_count(), 23);
        assert_eq!(LatticeIdeal::new(&mo(&[(2, 1), (2, 1)])).unwrap().complement_count(), 3);
    }

    #[test]
    fn domination() {
        let d = mo(&[(14, 5), (7, 2)]);
        let d2 = dominating_sequence(&d).unwrap().unwrap();
        assert!(d2 > d);
        assert_eq!(d2.entries()[0], d2.entries()[1]);
        let w = d2.weights();
        for a in LatticeIdeal::new(&d).unwrap().minimal_generators() {
            assert!(a.dot(&w) >= Rational::one());
        }
        assert_eq!(dominating_sequence(&mo(&[(5, 1), (7, 1)])).unwrap(), None);
        assert_eq!(dominating_sequence(&mo(&[(1, 1)])).unwrap(), None);
    }

    #[test]
    fn splitting() {
        let (c, t) = split_mord_gt1(&MultiOrder::from_integers(&[1, 1, 2, 3]).unwrap()).unwrap();
        assert_eq!((c, t), (2, MultiOrder::from_integers(&[2, 3]).unwrap()));
        assert_eq!(split_mord_gt1(&mo(&[(5, 1), (7, 1)])).unwrap().0, 0);
        assert_eq!(split_mord_gt1(&mo(&[(1, 1)])).unwrap(), (1, MultiOrder::empty()));
        assert_eq!(split_mord_gt1(&mo(&[(14, 5), (7, 2)])), Err(Error::NotInMord));
    }

    #[test]
    fn e_rule() {
        let e = e_sequence(&mo(&[(4, 1), (16, 3), (32, 5)]), 40).unwrap().unwrap();
        assert_eq!(&e[..2], &[BigInt::from(4), BigInt::from(32)]);
        assert_eq!(e.len(), 3);
        assert_eq!(e_sequence(&mo(&[(5, 2)]), 20).unwrap(), None);
        assert!(e_sequence(&mo(&[(4, 1), (16, 3), (32, 5)]), 20).is_err());
        assert!(e_sequence(&mo(&[(4, 1), (16, 3)]), 20).is_ok());
    }
}

//! Arithmetic in GF(2^n), the trace map, coordinates in a GF(2)-basis and
//! trace-dual bases.
//!
//! Elements are coefficient bit-vectors: bit `i` holds the coefficient of
//! `x^i`. With the default `x^2 + x + 1` this orders GF(4) as
//! `0, 1, ω, ω̄` with `ω = 0b10` and `ω̄ = ω + 1 = 0b11`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Position in the element ordering used for vectorization.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(2^n) given by an irreducible reduction polynomial (bitmask including `x^n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecConfig", into = "FieldSpecConfig")]
pub struct FieldSpec {
    n: u32,
    poly: u32,
}

/// Configuration form, e.g. `{"n": 2, "poly": "0b111"}`. `poly` defaults per `n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldSpecConfig {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
}

impl TryFrom<FieldSpecConfig> for FieldSpec {
    type Error = Error;
    fn try_from(c: FieldSpecConfig) -> Result<Self> {
        match c.poly {
            Some(p) => FieldSpec::new(c.n, parse_poly(&p)?),
            None => FieldSpec::with_default_poly(c.n),
        }
    }
}

impl From<FieldSpec> for FieldSpecConfig {
    fn from(s: FieldSpec) -> Self {
        FieldSpecConfig { n: s.n, poly: Some(format!("{:#b}", s.poly)) }
    }
}

/// Parses `0b...`, `0x...` or decimal.
pub fn parse_poly(s: &str) -> Result<u32> {
    let t = s.trim();
    let parsed = if let Some(b) = t.strip_prefix("0b") {
        u32::from_str_radix(b, 2)
    } else if let Some(h) = t.strip_prefix("0x") {
        u32::from_str_radix(h, 16)
    } else {
        t.parse()
    };
    parsed.map_err(|_| Error::PolyLiteral(s.to_string()))
}

fn degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

/// Remainder of carry-less division `a mod m` over GF(2)[x].
fn poly_mod(mut a: u32, m: u32) -> u32 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

/// Exhaustive trial division by every polynomial of degree 1..=n/2.
pub fn is_irreducible(poly: u32, n: u32) -> bool {
    if n == 0 || degree(poly) != n as i32 {
        return false;
    }
    for d in 1..=n / 2 {
        for divisor in (1u32 << d)..(1u32 << (d + 1)) {
            if poly_mod(poly, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    pub const MAX_QUBITS: u32 = 8;

    pub fn new(n: u32, poly: u32) -> Result<Self> {
        if n == 0 || n > Self::MAX_QUBITS {
            return Err(Error::UnsupportedQubits(n));
        }
        if !is_irreducible(poly, n) {
            return Err(Error::Reducible { n, poly });
        }
        Ok(Self { n, poly })
    }

    pub fn default_poly(n: u32) -> Option<u32> {
        Some(match n {
            1 => 0b11,
            2 => 0b111,
            3 => 0b1011,
            4 => 0b1_0011,
            5 => 0b10_0101,
            6 => 0b100_0011,
            7 => 0b1000_0011,
            8 => 0x11b,
            _ => return None,
        })
    }

    pub fn with_default_poly(n: u32) -> Result<Self> {
        let poly = Self::default_poly(n).ok_or(Error::UnsupportedQubits(n))?;
        Self::new(n, poly)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// N = 2^n.
    pub fn order(&self) -> usize {
        1 << self.n
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if (bits as usize) < self.order() {
            Ok(FieldElement(bits))
        } else {
            Err(Error::ElementOutOfRange { value: bits, n: self.n })
        }
    }

    /// Element at ordering position `i`. Panics when out of range.
    pub fn el(&self, i: usize) -> FieldElement {
        assert!(i < self.order(), "field index {i} out of range for N = {}", self.order());
        FieldElement(i as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order() as u32).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (mut x, mut y, mut acc) = (a.0, b.0, 0u32);
        let top = 1u32 << self.n;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x & top != 0 {
                x ^= self.poly;
            }
        }
        FieldElement(acc)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let (mut base, mut acc) = (a, FieldElement::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(N-2)`; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| self.pow(a, self.order() as u64 - 2))
    }

    /// Unique square root, `a^(N/2)`.
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.order() as u64 / 2)
    }

    /// `tr(a) = a + a^2 + ... + a^(2^(n-1))`, which lies in GF(2).
    pub fn trace(&self, a: FieldElement) -> u8 {
        let mut acc = FieldElement::ZERO;
        let mut term = a;
        for _ in 0..self.n {
            acc = self.add(acc, term);
            term = self.mul(term, term);
        }
        debug_assert!(acc.0 <= 1, "trace left GF(2): {acc}");
        acc.0 as u8
    }

    /// The descending polynomial basis `(x^(n-1), ..., x, 1)`; `(ω, 1)` for GF(4).
    pub fn polynomial_basis(&self) -> CoordinateBasis {
        let elements = (0..self.n).rev().map(|k| FieldElement(1 << k)).collect();
        CoordinateBasis::new(self, elements).expect("monomials always form a basis")
    }
}

/// An ordered GF(2)-basis `(e_1, ..., e_n)` of GF(2^n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateBasis {
    elements: Vec<FieldElement>,
    /// `decode[a]` = coordinate mask of `a`, bit `i` for `e_(i+1)`.
    decode: Vec<u32>,
}

impl CoordinateBasis {
    pub fn new(spec: &FieldSpec, elements: Vec<FieldElement>) -> Result<Self> {
        let not_basis = || Error::NotABasis { elements: elements.iter().map(|e| e.0).collect(), n: spec.n };
        if elements.len() != spec.n as usize || elements.iter().any(|e| e.index() >= spec.order()) {
            return Err(not_basis());
        }
        let mut decode = vec![u32::MAX; spec.order()];
        for mask in 0..spec.order() as u32 {
            let value = combine_mask(&elements, mask);
            if decode[value.index()] != u32::MAX {
                return Err(not_basis());
            }
            decode[value.index()] = mask;
        }
        Ok(Self { elements, decode })
    }

    pub fn from_bits(spec: &FieldSpec, bits: &[u32]) -> Result<Self> {
        let elements = bits.iter().map(|&b| spec.element(b)).collect::<Result<Vec<_>>>()?;
        Self::new(spec, elements)
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Coordinate mask of `a`; bit `i` is the coefficient of `elements[i]`.
    pub fn coord_mask(&self, a: FieldElement) -> u32 {
        self.decode[a.index()]
    }

    /// Coordinates `(c_1, ..., c_n)` with `sum c_i e_i = a`.
    pub fn coords(&self, a: FieldElement) -> Vec<u8> {
        let mask = self.coord_mask(a);
        (0..self.len()).map(|i| ((mask >> i) & 1) as u8).collect()
    }

    pub fn combine(&self, coords: &[u8]) -> FieldElement {
        let mask = coords.iter().enumerate().fold(0u32, |m, (i, &c)| m | (((c & 1) as u32) << i));
        combine_mask(&self.elements, mask)
    }

    /// Sum of all basis elements (all coordinates equal to one).
    pub fn all_ones(&self) -> FieldElement {
        combine_mask(&self.elements, u32::MAX)
    }
}

fn combine_mask(elements: &[FieldElement], mask: u32) -> FieldElement {
    elements
        .iter()
        .enumerate()
        .filter(|(i, _)| (mask >> i) & 1 == 1)
        .fold(FieldElement::ZERO, |acc, (_, e)| FieldElement(acc.0 ^ e.0))
}

/// The trace-dual basis `(f_j)` with `tr(e_i f_j) = δ_ij`.
///
/// Inverts the Gram matrix `G_ij = tr(e_i e_j)` over GF(2); the trace form is
/// non-degenerate, so the dual always exists.
pub fn dual_basis(spec: &FieldSpec, basis: &CoordinateBasis) -> CoordinateBasis {
    let n = basis.len();
    let e = basis.elements();
    let gram: Vec<u32> = (0..n)
        .map(|i| (0..n).fold(0u32, |row, j| row | ((spec.trace(spec.mul(e[i], e[j])) as u32) << j)))
        .collect();
    let inv = gf2_inverse(&gram, n).expect("trace form is non-degenerate");
    let dual = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&k| (inv[k] >> j) & 1 == 1)
                .fold(FieldElement::ZERO, |acc, k| spec.add(acc, e[k]))
        })
        .collect();
    CoordinateBasis::new(spec, dual).expect("dual of a basis is a basis")
}

/// Gauss-Jordan inverse of an `n x n` GF(2) matrix stored as row bitmasks.
fn gf2_inverse(rows: &[u32], n: usize) -> Option<Vec<u32>> {
    let mut a = rows.to_vec();
    let mut inv: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| (a[r] >> col) & 1 == 1)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && (a[r] >> col) & 1 == 1 {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    const OMEGA: FieldElement = FieldElement(0b10);
    const OMEGA_BAR: FieldElement = FieldElement(0b11);

    fn gf4() -> FieldSpec {
        FieldSpec::with_default_poly(2).unwrap()
    }

    fn small_fields() -> Vec<FieldSpec> {
        (1..=4).map(|n| FieldSpec::with_default_poly(n).unwrap()).collect()
    }

    #[test]
    fn gf4_addition_examples() {
        let f = gf4();
        assert_eq!(f.add(OMEGA, FieldElement::ONE), OMEGA_BAR);
        for a in f.elements() {
            assert_eq!(f.add(a, FieldElement::ZERO), a);
            assert_eq!(f.add(a, a), FieldElement::ZERO);
        }
        assert_eq!(f.add(OMEGA_BAR, OMEGA_BAR), FieldElement::ZERO);
    }

    #[test]
    fn gf4_multiplication_examples() {
        let f = gf4();
        assert_eq!(f.mul(OMEGA, OMEGA), OMEGA_BAR);
        assert_eq!(f.mul(OMEGA, OMEGA_BAR), FieldElement::ONE);
        for a in f.elements() {
            assert_eq!(f.mul(a, FieldElement::ONE), a);
        }
    }

    #[test]
    fn trace_examples() {
        let f = gf4();
        assert_eq!(f.trace(FieldElement::ZERO), 0);
        // ω + ω² = ω + ω̄ = 1
        assert_eq!(f.add(OMEGA, f.mul(OMEGA, OMEGA)), FieldElement::ONE);
        assert_eq!(f.trace(OMEGA), 1);
        assert_eq!(f.trace(FieldElement::ONE), 0);
        let gf2 = FieldSpec::with_default_poly(1).unwrap();
        assert_eq!(gf2.trace(FieldElement::ONE), 1);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.trace(f.add(a, b)), f.trace(a) ^ f.trace(b));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_and_cyclic_group() {
        for f in small_fields() {
            for a in f.elements().filter(|a| !a.is_zero()) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                assert_eq!(f.mul(a, f.pow(a, f.order() as u64 - 2)), FieldElement::ONE);
                assert_eq!(f.mul(f.sqrt(a), f.sqrt(a)), a);
            }
            assert!(f.inv(FieldElement::ZERO).is_none());
            // some element generates all of GF(N)*
            let has_generator = f.elements().filter(|a| !a.is_zero()).any(|g| {
                let mut seen = std::collections::HashSet::new();
                let mut x = FieldElement::ONE;
                for _ in 0..f.order() - 1 {
                    x = f.mul(x, g);
                    seen.insert(x);
                }
                seen.len() == f.order() - 1
            });
            assert!(has_generator);
        }
    }

    #[test]
    fn irreducibility_check() {
        assert!(is_irreducible(0b111, 2));
        assert!(!is_irreducible(0b101, 2)); // (x+1)^2
        assert!(!is_irreducible(0b1_0101, 4)); // (x^2+x+1)^2
        assert!(is_irreducible(0x11b, 8));
        assert!(matches!(FieldSpec::new(2, 0b101), Err(Error::Reducible { .. })));
        assert!(matches!(FieldSpec::new(9, 0b1), Err(Error::UnsupportedQubits(9))));
        for n in 1..=8 {
            assert!(FieldSpec::with_default_poly(n).is_ok());
        }
    }

    #[test]
    fn coordinates_in_basis() {
        let f = gf4();
        let b = CoordinateBasis::new(&f, vec![OMEGA, FieldElement::ONE]).unwrap();
        assert_eq!(b.coords(OMEGA_BAR), vec![1, 1]);
        assert_eq!(b.coords(FieldElement::ZERO), vec![0, 0]);
        assert_eq!(b.coords(OMEGA), vec![1, 0]);
        for sp in small_fields() {
            let basis = sp.polynomial_basis();
            for a in sp.elements() {
                assert_eq!(basis.combine(&basis.coords(a)), a);
            }
        }
    }

    #[test]
    fn non_basis_is_rejected() {
        let f = gf4();
        assert!(CoordinateBasis::new(&f, vec![OMEGA, OMEGA]).is_err());
        assert!(CoordinateBasis::new(&f, vec![OMEGA]).is_err());
        assert!(CoordinateBasis::from_bits(&f, &[1, 7]).is_err());
    }

    /// Enumeration oracle: every candidate tuple with tr(e_i f_j) = δ_ij.
    fn dual_by_enumeration(f: &FieldSpec, basis: &CoordinateBasis) -> Vec<FieldElement> {
        let e = basis.elements();
        (0..e.len())
            .map(|j| {
                let hits: Vec<_> = f
                    .elements()
                    .filter(|&c| (0..e.len()).all(|i| f.trace(f.mul(e[i], c)) == (i == j) as u8))
                    .collect();
                assert_eq!(hits.len(), 1);
                hits[0]
            })
            .collect()
    }

    #[test]
    fn dual_basis_examples() {
        let f = gf4();
        let b = CoordinateBasis::new(&f, vec![OMEGA, FieldElement::ONE]).unwrap();
        assert_eq!(dual_by_enumeration(&f, &b), vec![FieldElement::ONE, OMEGA_BAR]);
        assert_eq!(dual_basis(&f, &b).elements(), &[FieldElement::ONE, OMEGA_BAR]);

        let self_dual = CoordinateBasis::new(&f, vec![OMEGA, OMEGA_BAR]).unwrap();
        assert_eq!(dual_by_enumeration(&f, &self_dual), vec![OMEGA, OMEGA_BAR]);
        assert_eq!(dual_basis(&f, &self_dual).elements(), &[OMEGA, OMEGA_BAR]);

        let gf2 = FieldSpec::with_default_poly(1).unwrap();
        let one = gf2.polynomial_basis();
        assert_eq!(dual_basis(&gf2, &one).elements(), &[FieldElement::ONE]);
    }

    #[test]
    fn dual_basis_matches_enumeration_and_is_involutive() {
        for f in small_fields() {
            let b = f.polynomial_basis();
            let d = dual_basis(&f, &b);
            assert_eq!(d.elements(), dual_by_enumeration(&f, &b).as_slice());
            assert_eq!(dual_basis(&f, &d), b);
        }
    }

    #[test]
    fn config_round_trip() {
        let spec: FieldSpec = serde_json::from_str(r#"{"n": 2, "poly": "0b111"}"#).unwrap();
        assert_eq!(spec, gf4());
        let back = serde_json::to_string(&spec).unwrap();
        assert_eq!(back, r#"{"n":2,"poly":"0b111"}"#);
        let defaulted: FieldSpec = serde_json::from_str(r#"{"n": 3}"#).unwrap();
        assert_eq!(defaulted.poly(), 0b1011);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"n": 2, "poly": "0b101"}"#).is_err());
    }
}

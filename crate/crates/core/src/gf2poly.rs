//! Dense polynomial arithmetic over GF(2).
//!
//! Coefficients are packed 64 per machine word, little-endian by exponent:
//! bit `i` holds the coefficient of `x^i`. Addition is XOR, multiplication
//! is carry-less schoolbook, division is MSB-first shift-and-subtract.
//! These exact operations are the reference against which every encoder
//! and circuit simulation in this crate is checked.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const BITS: usize = 64;

/// A polynomial over GF(2).
///
/// The zero polynomial is the empty word vector; nonzero values never
/// store trailing zero words, so equality is plain word comparison.
///
/// ```
/// use bchcrt::Gf2Poly;
/// let g: Gf2Poly = "x^10+x^8+x^5+x^4+x^2+x+1".parse().unwrap();
/// assert_eq!(g.to_hex(), "537");
/// assert_eq!(g.degree(), Some(10));
/// assert_eq!(g.nz(), 7);
/// ```
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    /// The monomial `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut p = Gf2Poly::zero();
        p.set_coeff(n, true);
        p
    }

    /// Polynomial with coefficient bits taken from a single word
    /// (bit `i` of `w` is the coefficient of `x^i`).
    pub fn from_word(w: u64) -> Self {
        let mut p = Gf2Poly { words: vec![w] };
        p.normalize();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = self.words.last()?;
        Some(self.words.len() * BITS - 1 - last.leading_zeros() as usize)
    }

    /// Coefficient of `x^i`.
    pub fn coeff(&self, i: usize) -> bool {
        match self.words.get(i / BITS) {
            Some(w) => (w >> (i % BITS)) & 1 == 1,
            None => false,
        }
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        let (word, bit) = (i / BITS, i % BITS);
        if value {
            if word >= self.words.len() {
                self.words.resize(word + 1, 0);
            }
            self.words[word] |= 1 << bit;
        } else if word < self.words.len() {
            self.words[word] &= !(1 << bit);
            self.normalize();
        }
    }

    /// Number of nonzero coefficients.
    pub fn nz(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `self * x^n`.
    pub fn shifted_left(&self, n: usize) -> Self {
        if self.is_zero() || n == 0 {
            return self.clone();
        }
        let (word_shift, bit_shift) = (n / BITS, n % BITS);
        let mut words = vec![0u64; self.words.len() + word_shift + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + word_shift] |= w << bit_shift;
            if bit_shift != 0 {
                words[i + word_shift + 1] |= w >> (BITS - bit_shift);
            }
        }
        let mut p = Gf2Poly { words };
        p.normalize();
        p
    }

    /// XOR `other * x^shift` into `self`. This is the inner step of both
    /// addition and long division.
    fn xor_shifted(&mut self, other: &Gf2Poly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let (word_shift, bit_shift) = (shift / BITS, shift % BITS);
        let needed = other.words.len() + word_shift + 1;
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + word_shift] ^= w << bit_shift;
            if bit_shift != 0 {
                self.words[i + word_shift + 1] ^= w >> (BITS - bit_shift);
            }
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// Quotient and remainder of `self / divisor`, schoolbook MSB-first.
    ///
    /// Everything higher-level — the CRT identity, the LFSR circuits, all
    /// three encoder backends — is validated against this routine.
    pub fn divmod(&self, divisor: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Gf2Poly::zero();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let shift = dr - db;
            rem.xor_shifted(divisor, shift);
            quot.set_coeff(shift, true);
        }
        Ok((quot, rem))
    }

    /// Remainder of `self mod modulus`.
    pub fn rem(&self, modulus: &Gf2Poly) -> Result<Gf2Poly> {
        Ok(self.divmod(modulus)?.1)
    }

    /// Extended Euclid: returns `(d, s, t)` with `d = gcd(a, b)` and
    /// `s*a + t*b = d`. Iterative, so degrees in the hundreds are fine.
    pub fn ext_gcd(a: &Gf2Poly, b: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly, Gf2Poly)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Gf2Poly::one(), Gf2Poly::zero());
        let (mut t0, mut t1) = (Gf2Poly::zero(), Gf2Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 + &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 + &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        Ok((r0, s0, t0))
    }

    pub fn gcd(a: &Gf2Poly, b: &Gf2Poly) -> Result<Gf2Poly> {
        Ok(Self::ext_gcd(a, b)?.0)
    }

    /// Inverse of `self` modulo `modulus`: the unique `v` with
    /// `deg(v) < deg(modulus)` and `v * self ≡ 1 (mod modulus)`.
    pub fn mod_inverse(&self, modulus: &Gf2Poly) -> Result<Gf2Poly> {
        match modulus.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(Error::ConstantModulus),
        }
        let (d, s, _) = Self::ext_gcd(self, modulus)?;
        if !d.is_one() {
            return Err(Error::NotCoprime { common: d });
        }
        s.rem(modulus)
    }

    /// Coefficients as a bit stream, highest exponent first, padded with
    /// leading zeros to `width` bits. Panics if the polynomial does not
    /// fit, which always indicates a caller bug.
    pub fn to_bits_msb(&self, width: usize) -> Vec<bool> {
        if let Some(d) = self.degree() {
            assert!(
                d < width,
                "polynomial of degree {d} does not fit in {width} bits"
            );
        }
        (0..width).map(|i| self.coeff(width - 1 - i)).collect()
    }

    /// Inverse of [`to_bits_msb`](Self::to_bits_msb): `bits[0]` is the
    /// coefficient of the highest exponent `bits.len() - 1`.
    pub fn from_bits_msb(bits: &[bool]) -> Self {
        let mut p = Gf2Poly::zero();
        let width = bits.len();
        for (i, &b) in bits.iter().enumerate() {
            if b {
                p.set_coeff(width - 1 - i, true);
            }
        }
        p
    }

    /// Hex form of the coefficient bits, e.g. `x^10+x^8+x^5+x^4+x^2+x+1`
    /// prints as `"537"`. Bit `i` of the hex value is the coefficient of
    /// `x^i`; digits appear most significant first.
    pub fn to_hex(&self) -> String {
        match self.words.split_last() {
            None => "0".to_string(),
            Some((last, rest)) => {
                let mut s = format!("{last:x}");
                for w in rest.iter().rev() {
                    s.push_str(&format!("{w:016x}"));
                }
                s
            }
        }
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::PolyParse("empty hex string".into()));
        }
        let mut p = Gf2Poly::zero();
        let digits = s.len();
        for (pos, c) in s.chars().enumerate() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| Error::PolyParse(format!("invalid hex digit {c:?}")))?;
            let base = (digits - 1 - pos) * 4;
            for bit in 0..4 {
                if (d >> bit) & 1 == 1 {
                    p.set_coeff(base + bit, true);
                }
            }
        }
        Ok(p)
    }

    /// Exponent-list form, e.g. `"x^10+x^8+x^5+x^4+x^2+x+1"`; exponent 1
    /// prints as `x`, exponent 0 as `1`, the zero polynomial as `"0"`.
    pub fn to_terms(&self) -> String {
        let Some(deg) = self.degree() else {
            return "0".to_string();
        };
        let mut terms = Vec::new();
        for i in (0..=deg).rev() {
            if self.coeff(i) {
                terms.push(match i {
                    0 => "1".to_string(),
                    1 => "x".to_string(),
                    _ => format!("x^{i}"),
                });
            }
        }
        terms.join("+")
    }

    pub fn from_terms(s: &str) -> Result<Self> {
        let mut p = Gf2Poly::zero();
        for term in s.split('+') {
            let term = term.trim();
            let exp = match term {
                "0" => continue,
                "1" => 0,
                "x" => 1,
                _ => {
                    let rest = term
                        .strip_prefix("x^")
                        .ok_or_else(|| Error::PolyParse(format!("invalid term {term:?}")))?;
                    rest.parse::<usize>()
                        .map_err(|_| Error::PolyParse(format!("invalid exponent in {term:?}")))?
                }
            };
            if p.coeff(exp) {
                return Err(Error::PolyParse(format!("duplicate exponent {exp}")));
            }
            p.set_coeff(exp, true);
        }
        Ok(p)
    }
}

impl Add<&Gf2Poly> for &Gf2Poly {
    type Output = Gf2Poly;

    fn add(self, rhs: &Gf2Poly) -> Gf2Poly {
        let mut out = self.clone();
        out.xor_shifted(rhs, 0);
        out
    }
}

impl Add for Gf2Poly {
    type Output = Gf2Poly;

    fn add(mut self, rhs: Gf2Poly) -> Gf2Poly {
        self.xor_shifted(&rhs, 0);
        self
    }
}

impl AddAssign<&Gf2Poly> for Gf2Poly {
    fn add_assign(&mut self, rhs: &Gf2Poly) {
        self.xor_shifted(rhs, 0);
    }
}

impl Mul<&Gf2Poly> for &Gf2Poly {
    type Output = Gf2Poly;

    /// Carry-less schoolbook product; quadratic is plenty at the degrees
    /// involved here (generator polynomials top out near degree 510).
    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        let mut out = Gf2Poly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        // Iterate over set bits of the lower-degree operand.
        let (small, big) = if self.words.len() <= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (wi, &w) in small.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let bit = w.trailing_zeros() as usize;
                out.xor_shifted(big, wi * BITS + bit);
                w &= w - 1;
            }
        }
        out
    }
}

impl Mul for Gf2Poly {
    type Output = Gf2Poly;

    fn mul(self, rhs: Gf2Poly) -> Gf2Poly {
        &self * &rhs
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_terms())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({})", self.to_terms())
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    /// Accepts both text forms: exponent lists contain `x` (or are `0`/`1`,
    /// identical in both readings), anything else is treated as hex.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('x') {
            Gf2Poly::from_terms(s)
        } else {
            Gf2Poly::from_hex(s)
        }
    }
}

impl Serialize for Gf2Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Gf2Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Gf2Poly::from_hex(&s).map_err(D::Error::custom)
    }
}

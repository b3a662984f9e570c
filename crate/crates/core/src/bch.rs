//! Narrow-sense binary BCH codes.
//!
//! A code of designed distance δ over GF(2^t) is built from first
//! principles: the cyclotomic cosets of the exponents 1..δ−1 determine the
//! distinct minimal polynomials w₁..w_r, and the generator is their
//! product g = w₁···w_r. Every codeword polynomial then vanishes at
//! α^1..α^{δ−1}, which is exactly what [`BchCode::verify_codeword`]
//! checks.

use serde::{Deserialize, Serialize};

use crate::crt::Codeword;
use crate::error::{Error, Result};
use crate::gf2field::{cyclotomic_cosets, CyclotomicCoset, Gf2mField};
use crate::gf2poly::Gf2Poly;

fn is_prime(t: u32) -> bool {
    matches!(t, 2 | 3 | 5 | 7 | 11 | 13)
}

/// A narrow-sense binary BCH code of length 2^t − 1.
pub struct BchCode {
    field: Gf2mField,
    n: usize,
    k: usize,
    delta: usize,
    cosets: Vec<CyclotomicCoset>,
    factors: Vec<Gf2Poly>,
    g: Gf2Poly,
}

impl BchCode {
    /// Construct the code with designed distance `delta`, using the
    /// default primitive polynomial for `t` unless one is supplied.
    pub fn build(t: u32, delta: usize, prim_poly: Option<Gf2Poly>) -> Result<Self> {
        let field = Gf2mField::new(t, prim_poly)?;
        let n = field.order();
        if !(2..=n).contains(&delta) {
            return Err(Error::DeltaOutOfRange { delta, n });
        }

        let exponents: Vec<usize> = (1..delta).collect();
        let cosets = cyclotomic_cosets(t, &exponents);
        let factors: Vec<Gf2Poly> = cosets
            .iter()
            .map(|c| field.minimal_polynomial_of(c))
            .collect();
        let g = factors.iter().fold(Gf2Poly::one(), |acc, w| &acc * w);

        let deg_g = g
            .degree()
            .expect("generator of a nonempty root set is nonzero");
        assert!(deg_g < n, "generator cannot exhaust the code space");
        let k = n - deg_g;
        let r = factors.len();

        // Structural facts the construction is supposed to deliver; a
        // failure here is a bug, not bad input.
        for j in 1..delta {
            assert!(
                field.eval(&g, field.alpha_pow(j)).is_zero(),
                "alpha^{j} is not a root of the generator"
            );
        }
        assert!(
            2 * r <= deg_g,
            "every coset of a nonzero exponent has size >= 2"
        );
        if is_prime(t) {
            assert_eq!(
                deg_g,
                r * t as usize,
                "prime t forces every coset to size t"
            );
        }

        Ok(BchCode {
            field,
            n,
            k,
            delta,
            cosets,
            factors,
            g,
        })
    }

    pub fn t(&self) -> u32 {
        self.field.t()
    }

    /// Code length N = 2^t − 1.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension K = N − deg(g).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn field(&self) -> &Gf2mField {
        &self.field
    }

    pub fn generator(&self) -> &Gf2Poly {
        &self.g
    }

    /// The distinct irreducible factors of the generator, sorted by the
    /// representative of their cyclotomic coset.
    pub fn factors(&self) -> &[Gf2Poly] {
        &self.factors
    }

    pub fn cosets(&self) -> &[CyclotomicCoset] {
        &self.cosets
    }

    /// Number of generator factors (branches of the CRT decomposition).
    pub fn r(&self) -> usize {
        self.factors.len()
    }

    /// True iff the word evaluates to zero at α^j for every
    /// j = 1..δ−1. Agrees with divisibility of the word by g; the test
    /// suite checks both routes against each other.
    pub fn verify_codeword(&self, cw: &Codeword) -> Result<bool> {
        Ok(self.first_failing_root(cw)?.is_none())
    }

    /// The smallest exponent j in 1..δ−1 whose root check fails, if any.
    pub fn first_failing_root(&self, cw: &Codeword) -> Result<Option<usize>> {
        if cw.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: cw.len(),
            });
        }
        let c = cw.to_poly();
        for j in 1..self.delta {
            if !self.field.eval(&c, self.field.alpha_pow(j)).is_zero() {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    /// Serializable summary of the construction.
    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            t: self.t(),
            n: self.n,
            k: self.k,
            delta: self.delta,
            prim_poly: self.field.prim_poly().clone(),
            g: self.g.clone(),
            factors: self.factors.clone(),
        }
    }

    /// Rebuild a code from a descriptor, cross-checking that the
    /// reconstruction reproduces the recorded generator and factors.
    pub fn from_descriptor(d: &CodeDescriptor) -> Result<Self> {
        let code = BchCode::build(d.t, d.delta, Some(d.prim_poly.clone()))?;
        if code.n != d.n || code.k != d.k || code.g != d.g || code.factors != d.factors {
            return Err(Error::Descriptor(
                "descriptor does not match the code it describes".into(),
            ));
        }
        Ok(code)
    }
}

/// JSON-facing form of a built code; polynomials are hex strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub t: u32,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub delta: usize,
    pub prim_poly: Gf2Poly,
    pub g: Gf2Poly,
    pub factors: Vec<Gf2Poly>,
}

impl CodeDescriptor {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crt::{encode_systematic, Backend, Message};

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn example_code_15_5() {
        let code = BchCode::build(4, 7, None).unwrap();
        assert_eq!((code.n(), code.k(), code.r()), (15, 5, 3));
        assert_eq!(code.generator(), &p("x^10+x^8+x^5+x^4+x^2+x+1"));
        assert_eq!(
            code.factors(),
            &[p("x^4+x+1"), p("x^4+x^3+x^2+x+1"), p("x^2+x+1")]
        );
        let members: Vec<&[usize]> = code.cosets().iter().map(|c| c.members()).collect();
        assert_eq!(
            members,
            vec![&[1, 2, 4, 8][..], &[3, 6, 12, 9][..], &[5, 10][..]]
        );
        // Multiplying the factors back reproduces g bit-exactly.
        let prod = code
            .factors()
            .iter()
            .fold(Gf2Poly::one(), |acc, w| &acc * w);
        assert_eq!(&prod, code.generator());
    }

    #[test]
    fn code_2047_1926() {
        let code = BchCode::build(11, 23, None).unwrap();
        assert_eq!((code.n(), code.k()), (2047, 1926));
        assert_eq!(code.generator().degree(), Some(121));
        assert_eq!(code.r(), 11);
        assert!(code.factors().iter().all(|w| w.degree() == Some(11)));
    }

    #[test]
    fn delta_validation() {
        assert!(matches!(
            BchCode::build(4, 1, None),
            Err(Error::DeltaOutOfRange { delta: 1, n: 15 })
        ));
        assert!(matches!(
            BchCode::build(4, 16, None),
            Err(Error::DeltaOutOfRange { delta: 16, n: 15 })
        ));
        // delta = N is the all-roots extreme and still leaves K = 1.
        let code = BchCode::build(4, 15, None).unwrap();
        assert_eq!(code.k(), 1);
    }

    #[test]
    fn degenerate_delta_two_has_single_factor() {
        let code = BchCode::build(4, 2, None).unwrap();
        assert_eq!(code.r(), 1);
        assert_eq!(code.generator(), code.field().prim_poly());
    }

    #[test]
    fn verify_codeword_routes_agree() {
        let code = BchCode::build(4, 7, None).unwrap();
        // The generator itself, zero-padded to length N, is a codeword.
        let g_word = Codeword::from_poly(code.generator(), code.n()).unwrap();
        assert!(code.verify_codeword(&g_word).unwrap());
        // The all-zero word is a codeword.
        let zero = Codeword::from_poly(&Gf2Poly::zero(), code.n()).unwrap();
        assert!(code.verify_codeword(&zero).unwrap());
        // Any weight-1 word is not (delta >= 2).
        for i in 0..code.n() {
            let w = Codeword::from_poly(&Gf2Poly::monomial(i), code.n()).unwrap();
            assert!(!code.verify_codeword(&w).unwrap());
            // Root evaluation and divisibility by g agree on non-codewords
            // as well.
            assert!(!w.to_poly().rem(code.generator()).unwrap().is_zero());
        }
        let short = Codeword::from_poly(&Gf2Poly::zero(), 14).unwrap();
        assert!(code.verify_codeword(&short).is_err());
    }

    #[test]
    fn exhaustive_min_distance_15_5() {
        let code = BchCode::build(4, 7, None).unwrap();
        let mut min_weight = usize::MAX;
        for m in 1u32..(1 << code.k()) {
            let bits: Vec<bool> = (0..code.k())
                .map(|i| (m >> (code.k() - 1 - i)) & 1 == 1)
                .collect();
            let cw = encode_systematic(&code, &Message::from_bits(bits), Backend::Naive).unwrap();
            let weight = cw.bits().iter().filter(|&&b| b).count();
            min_weight = min_weight.min(weight);
        }
        assert!(
            min_weight >= 7,
            "minimum nonzero weight {min_weight} below designed distance"
        );
    }

    #[test]
    fn descriptor_round_trip() {
        let code = BchCode::build(4, 7, None).unwrap();
        let d = code.descriptor();
        let json = d.to_json();
        let d2 = CodeDescriptor::from_json(&json).unwrap();
        assert_eq!(d, d2);
        assert_eq!(d2.to_json(), json);
        assert_eq!(d2.g.to_hex(), "537");
        let rebuilt = BchCode::from_descriptor(&d2).unwrap();
        assert_eq!(rebuilt.generator(), code.generator());

        let mut bad = d2.clone();
        bad.g = p("x^10+1");
        assert!(BchCode::from_descriptor(&bad).is_err());
    }
}

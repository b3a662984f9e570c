//! GF(2^t) construction with log/antilog tables, cyclotomic cosets and
//! minimal polynomials.
//!
//! A field is defined by its extension degree `t` and a primitive
//! polynomial of that degree. Construction enumerates the powers of the
//! root α and refuses any polynomial whose root does not have full
//! multiplicative order 2^t − 1, so a successfully built field always has
//! bijective log/antilog tables. Multiplication is then two lookups and
//! an index addition.

use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;

/// Default primitive polynomial per extension degree, `bits` little-endian
/// by exponent. All entries are verified primitive by the field
/// constructor; a test walks the whole table.
const DEFAULT_PRIM_POLYS: [(u32, u32); 15] = [
    (2, 0x7),      // x^2+x+1
    (3, 0xB),      // x^3+x+1
    (4, 0x13),     // x^4+x+1
    (5, 0x25),     // x^5+x^2+1
    (6, 0x43),     // x^6+x+1
    (7, 0x89),     // x^7+x^3+1
    (8, 0x11D),    // x^8+x^4+x^3+x^2+1
    (9, 0x211),    // x^9+x^4+1
    (10, 0x409),   // x^10+x^3+1
    (11, 0x805),   // x^11+x^2+1
    (12, 0x1053),  // x^12+x^6+x^4+x+1
    (13, 0x201B),  // x^13+x^4+x^3+x+1
    (14, 0x4443),  // x^14+x^10+x^6+x+1
    (15, 0x8003),  // x^15+x+1
    (16, 0x1100B), // x^16+x^12+x^3+x+1
];

/// The built-in primitive polynomial for extension degree `t`, if `t` is
/// in the supported 2..=16 range.
pub fn default_prim_poly(t: u32) -> Option<Gf2Poly> {
    DEFAULT_PRIM_POLYS
        .iter()
        .find(|(deg, _)| *deg == t)
        .map(|(_, bits)| Gf2Poly::from_word(*bits as u64))
}

/// An element of GF(2^t) in polynomial basis: bit `i` is the coefficient
/// of α^i. Only meaningful relative to the field that produced it.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub struct Gf2mElement(u16);

impl Gf2mElement {
    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// GF(2^t) for 2 ≤ t ≤ 16, with α the root of the defining primitive
/// polynomial.
#[derive(Clone)]
pub struct Gf2mField {
    t: u32,
    n: usize, // 2^t - 1, the multiplicative order of α
    prim_poly: Gf2Poly,
    log: Vec<u16>,     // element bits -> exponent; index 0 unused
    antilog: Vec<u16>, // exponent -> element bits
}

impl std::fmt::Debug for Gf2mField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gf2mField(t={}, prim_poly={})", self.t, self.prim_poly)
    }
}

impl Gf2mField {
    /// Build GF(2^t). With `prim_poly == None` the table entry from
    /// [`default_prim_poly`] is used. Fails if the polynomial is not
    /// primitive, reporting the actual multiplicative order of its root.
    pub fn new(t: u32, prim_poly: Option<Gf2Poly>) -> Result<Self> {
        if !(2..=16).contains(&t) {
            return Err(Error::UnsupportedExtensionDegree { t });
        }
        let prim_poly = match prim_poly {
            Some(p) => p,
            None => default_prim_poly(t).expect("t validated above"),
        };
        if prim_poly.degree() != Some(t as usize) {
            return Err(Error::FieldPolyDegree {
                t,
                got: prim_poly.degree(),
            });
        }
        if !prim_poly.coeff(0) {
            // x divides the polynomial, so its root is not invertible and
            // has no multiplicative order at all.
            return Err(Error::NotPrimitive { order: None });
        }

        let n = (1usize << t) - 1;
        let prim_bits: u32 = (0..=t).fold(0, |acc, i| {
            acc | (u32::from(prim_poly.coeff(i as usize)) << i)
        });

        let mut log = vec![0u16; n + 1];
        let mut antilog = vec![0u16; n];
        let mut v: u32 = 1;
        for (e, slot) in antilog.iter_mut().enumerate() {
            if e > 0 && v == 1 {
                return Err(Error::NotPrimitive { order: Some(e) });
            }
            *slot = v as u16;
            log[v as usize] = e as u16;
            v <<= 1;
            if (v >> t) & 1 == 1 {
                v ^= prim_bits;
            }
        }
        if v != 1 {
            // Reducible polynomial whose root never cycles back to 1.
            return Err(Error::NotPrimitive { order: None });
        }

        Ok(Gf2mField {
            t,
            n,
            prim_poly,
            log,
            antilog,
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// 2^t − 1: the order of α and the length of the associated BCH codes.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn prim_poly(&self) -> &Gf2Poly {
        &self.prim_poly
    }

    pub fn zero(&self) -> Gf2mElement {
        Gf2mElement(0)
    }

    pub fn one(&self) -> Gf2mElement {
        Gf2mElement(1)
    }

    pub fn alpha(&self) -> Gf2mElement {
        Gf2mElement(self.antilog[1])
    }

    /// α^j, with `j` taken modulo 2^t − 1.
    pub fn alpha_pow(&self, j: usize) -> Gf2mElement {
        Gf2mElement(self.antilog[j % self.n])
    }

    /// Element from raw polynomial-basis bits. Panics if bits overflow the
    /// field width; callers construct elements from in-range data only.
    pub fn element(&self, bits: u16) -> Gf2mElement {
        assert!((bits as usize) <= self.n, "element bits out of field range");
        Gf2mElement(bits)
    }

    /// Discrete log base α, or `None` for the zero element.
    pub fn log(&self, a: Gf2mElement) -> Option<usize> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize] as usize)
        }
    }

    pub fn add(&self, a: Gf2mElement, b: Gf2mElement) -> Gf2mElement {
        Gf2mElement(a.0 ^ b.0)
    }

    /// Product via the log/antilog tables; zero absorbs.
    pub fn mul(&self, a: Gf2mElement, b: Gf2mElement) -> Gf2mElement {
        if a.is_zero() || b.is_zero() {
            return Gf2mElement(0);
        }
        let e = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        Gf2mElement(self.antilog[e % self.n])
    }

    /// Evaluate a binary polynomial at a field element (Horner).
    pub fn eval(&self, poly: &Gf2Poly, at: Gf2mElement) -> Gf2mElement {
        let Some(deg) = poly.degree() else {
            return self.zero();
        };
        let mut acc = self.zero();
        for i in (0..=deg).rev() {
            acc = self.mul(acc, at);
            if poly.coeff(i) {
                acc = self.add(acc, self.one());
            }
        }
        acc
    }

    /// The minimal polynomial of α^j over GF(2): the product of
    /// `(x + α^s)` over the cyclotomic coset of `j`, computed in
    /// GF(2^t)[x] and projected back to binary coefficients.
    pub fn minimal_polynomial(&self, j: usize) -> Gf2Poly {
        let coset = CyclotomicCoset::generate(self.t, j);
        self.minimal_polynomial_of(&coset)
    }

    pub(crate) fn minimal_polynomial_of(&self, coset: &CyclotomicCoset) -> Gf2Poly {
        // coeffs[i] is the coefficient of x^i; start from the constant 1
        // and multiply one linear factor at a time.
        let mut coeffs: Vec<Gf2mElement> = Vec::with_capacity(coset.len() + 1);
        coeffs.push(self.one());
        for &s in coset.members() {
            let root = self.alpha_pow(s);
            coeffs.push(self.zero());
            for i in (0..coeffs.len() - 1).rev() {
                let c = coeffs[i];
                coeffs[i + 1] = self.add(coeffs[i + 1], c);
                coeffs[i] = self.mul(c, root);
            }
        }
        let mut out = Gf2Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            // Conjugate-closed root sets always collapse to GF(2)
            // coefficients; anything else means the tables are broken.
            assert!(
                c.bits() <= 1,
                "minimal polynomial coefficient {:#x} of x^{} lies outside GF(2)",
                c.bits(),
                i
            );
            if c.bits() == 1 {
                out.set_coeff(i, true);
            }
        }
        out
    }
}

/// The orbit of an exponent under doubling modulo 2^t − 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCoset {
    representative: usize,
    members: Vec<usize>,
}

impl CyclotomicCoset {
    /// The coset containing `j`. Members are listed in doubling order
    /// starting from the smallest element.
    pub fn generate(t: u32, j: usize) -> Self {
        let n = (1usize << t) - 1;
        assert!(j < n, "exponent {j} out of range 0..{n}");
        let mut seen = Vec::new();
        let mut x = j;
        loop {
            seen.push(x);
            x = (x * 2) % n;
            if x == j {
                break;
            }
        }
        let representative = *seen.iter().min().expect("coset is never empty");
        let mut members = Vec::with_capacity(seen.len());
        let mut x = representative;
        for _ in 0..seen.len() {
            members.push(x);
            x = (x * 2) % n;
        }
        debug_assert!(
            (t as usize).is_multiple_of(members.len()),
            "coset size must divide t"
        );
        CyclotomicCoset {
            representative,
            members,
        }
    }

    pub fn representative(&self) -> usize {
        self.representative
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.contains(&j)
    }
}

/// The minimal set of disjoint cosets covering `exponents`, sorted by
/// representative. Exponents must lie in `0..2^t − 1`.
pub fn cyclotomic_cosets(t: u32, exponents: &[usize]) -> Vec<CyclotomicCoset> {
    let n = (1usize << t) - 1;
    let mut covered = vec![false; n];
    let mut out: Vec<CyclotomicCoset> = Vec::new();
    let mut sorted: Vec<usize> = exponents.to_vec();
    sorted.sort_unstable();
    for &e in &sorted {
        assert!(e < n, "exponent {e} out of range 0..{n}");
        if covered[e] {
            continue;
        }
        let coset = CyclotomicCoset::generate(t, e);
        for &m in coset.members() {
            covered[m] = true;
        }
        out.push(coset);
    }
    out.sort_by_key(|c| c.representative);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn gf16_is_cyclic_of_order_15() {
        let f = Gf2mField::new(4, Some(p("x^4+x+1"))).unwrap();
        let a = f.alpha();
        let mut v = f.one();
        for k in 1..15 {
            v = f.mul(v, a);
            assert!(v != f.one(), "alpha^{k} = 1 too early");
        }
        assert_eq!(f.mul(v, a), f.one());
        // The defining polynomial vanishes at its own root.
        assert!(f.eval(f.prim_poly(), a).is_zero());
    }

    #[test]
    fn non_primitive_poly_is_rejected_with_order() {
        // The root of x^4+x^3+x^2+x+1 has order 5, not 15.
        match Gf2mField::new(4, Some(p("x^4+x^3+x^2+x+1"))) {
            Err(Error::NotPrimitive { order: Some(5) }) => {}
            other => panic!("expected NotPrimitive with order 5, got {other:?}"),
        }
        // Reducible with zero constant term: the root is not a unit.
        match Gf2mField::new(4, Some(p("x^4+x^3"))) {
            Err(Error::NotPrimitive { order: None }) => {}
            other => panic!("expected NotPrimitive without order, got {other:?}"),
        }
        // Wrong degree.
        assert!(matches!(
            Gf2mField::new(4, Some(p("x^3+x+1"))),
            Err(Error::FieldPolyDegree { .. })
        ));
    }

    #[test]
    fn default_table_builds_for_every_t() {
        for t in 2..=16 {
            let f = Gf2mField::new(t, None).unwrap();
            assert_eq!(f.order(), (1 << t) - 1);
        }
        assert!(matches!(
            Gf2mField::new(1, None),
            Err(Error::UnsupportedExtensionDegree { t: 1 })
        ));
        assert!(matches!(
            Gf2mField::new(17, None),
            Err(Error::UnsupportedExtensionDegree { t: 17 })
        ));
    }

    #[test]
    fn log_antilog_bijection() {
        let f = Gf2mField::new(6, None).unwrap();
        for bits in 1..=f.order() as u16 {
            let e = f.element(bits);
            let l = f.log(e).unwrap();
            assert_eq!(f.alpha_pow(l), e);
        }
        assert_eq!(f.log(f.zero()), None);
    }

    #[test]
    fn mul_group_law() {
        let f = Gf2mField::new(5, None).unwrap();
        let n = f.order();
        for i in [0usize, 1, 3, 17, 29] {
            for j in [0usize, 2, 5, 30] {
                let prod = f.mul(f.alpha_pow(i), f.alpha_pow(j));
                assert_eq!(prod, f.alpha_pow((i + j) % n));
            }
        }
        let a = f.alpha_pow(11);
        assert_eq!(f.mul(a, f.one()), a);
        assert!(f.mul(a, f.zero()).is_zero());
    }

    #[test]
    fn cosets_gf16() {
        let cs = cyclotomic_cosets(4, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0].members(), &[1, 2, 4, 8]);
        assert_eq!(cs[1].members(), &[3, 6, 12, 9]);
        assert_eq!(cs[2].members(), &[5, 10]);
        assert_eq!(
            cs.iter().map(|c| c.representative()).collect::<Vec<_>>(),
            vec![1, 3, 5]
        );
    }

    #[test]
    fn cosets_prime_t_all_full_size() {
        let exps: Vec<usize> = (1..=22).collect();
        let cs = cyclotomic_cosets(11, &exps);
        assert_eq!(cs.len(), 11);
        assert!(cs.iter().all(|c| c.len() == 11));
    }

    #[test]
    fn coset_of_zero_is_fixed() {
        let cs = cyclotomic_cosets(4, &[0]);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].members(), &[0]);
    }

    #[test]
    fn minimal_polynomials_gf16() {
        let f = Gf2mField::new(4, Some(p("x^4+x+1"))).unwrap();
        // Coset {5, 10} has size 2.
        assert_eq!(f.minimal_polynomial(5), p("x^2+x+1"));
        // Alpha is a root of its own defining polynomial.
        assert_eq!(f.minimal_polynomial(1), p("x^4+x+1"));
        // Alpha^0 = 1 has minimal polynomial x+1.
        assert_eq!(f.minimal_polynomial(0), p("x+1"));
    }

    #[test]
    fn minimal_polynomial_properties() {
        let f = Gf2mField::new(6, None).unwrap();
        let cs = cyclotomic_cosets(6, &(0..=10).collect::<Vec<_>>());
        let polys: Vec<Gf2Poly> = cs.iter().map(|c| f.minimal_polynomial_of(c)).collect();
        for (c, w) in cs.iter().zip(&polys) {
            // Degree equals coset size and divides t.
            assert_eq!(w.degree(), Some(c.len()));
            assert_eq!(6 % c.len(), 0);
            // Vanishes at every member exponent.
            for &s in c.members() {
                assert!(f.eval(w, f.alpha_pow(s)).is_zero());
            }
        }
        // Distinct cosets give pairwise coprime polynomials.
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                assert!(Gf2Poly::gcd(&polys[i], &polys[j]).unwrap().is_one());
            }
        }
    }
}

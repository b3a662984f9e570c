//! Systematic encoding and its CRT decomposition.
//!
//! The remainder of f(x) modulo a product g = w₁···w_r of pairwise
//! coprime polynomials splits into r independent branches:
//!
//! ```text
//! Rem_g(f) = Σᵢ wᵢ'·Rem_{wᵢ}(uᵢ·f)        wᵢ' = g/wᵢ,  uᵢ·wᵢ' ≡ 1 (mod wᵢ)
//! ```
//!
//! The sum on the right already has degree below deg(g); no final
//! reduction is performed, only asserted. [`encode_systematic`] computes
//! the parity remainder through one of three interchangeable backends:
//! plain long division, a single serial division circuit with divisor g,
//! or the branch-parallel CRT datapath.

use crate::bch::BchCode;
use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;
use crate::lfsr::{Datapath, LfsrCircuit};

/// One branch of the CRT decomposition of g.
#[derive(Clone, Debug)]
pub struct CrtBranch {
    /// Irreducible factor wᵢ of the generator.
    pub w: Gf2Poly,
    /// Cofactor wᵢ' = g / wᵢ.
    pub w_prime: Gf2Poly,
    /// Inverse constant: deg(uᵢ) < deg(wᵢ) and uᵢ·wᵢ' ≡ 1 (mod wᵢ).
    pub u: Gf2Poly,
}

/// Precomputed CRT constants for a code's generator.
#[derive(Clone, Debug)]
pub struct CrtPlan {
    n: usize,
    g: Gf2Poly,
    branches: Vec<CrtBranch>,
}

impl CrtPlan {
    /// Compute (wᵢ', uᵢ) for every factor of the code's generator. Each
    /// branch identity is re-verified by multiplication before the plan
    /// is returned.
    pub fn new(code: &BchCode) -> Result<Self> {
        let g = code.generator().clone();
        let deg_g = g.degree().expect("generator is nonzero");
        let mut branches = Vec::with_capacity(code.r());
        for w in code.factors() {
            let (w_prime, rem) = g.divmod(w)?;
            assert!(rem.is_zero(), "factor does not divide the generator");
            let deg_w = w.degree().expect("factors are nonzero");
            assert_eq!(w_prime.degree(), Some(deg_g - deg_w));
            // Reducing w' first keeps the Euclid run at degree < t.
            let u = w_prime.rem(w)?.mod_inverse(w)?;
            assert!(u.degree().unwrap_or(0) < deg_w);
            assert!(
                (&u * &w_prime).rem(w)?.is_one(),
                "inverse constant failed its re-multiplication check"
            );
            branches.push(CrtBranch {
                w: w.clone(),
                w_prime,
                u,
            });
        }
        Ok(CrtPlan {
            n: code.n(),
            g,
            branches,
        })
    }

    /// Code length of the underlying code.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> &Gf2Poly {
        &self.g
    }

    pub fn branches(&self) -> &[CrtBranch] {
        &self.branches
    }

    /// Number of branches.
    pub fn r(&self) -> usize {
        self.branches.len()
    }

    /// Rem_g(f) via the branch sum. Works for any f, including
    /// deg(f) ≥ deg(g); the sum needs (and gets) no final reduction.
    pub fn remainder(&self, f: &Gf2Poly) -> Gf2Poly {
        let mut acc = Gf2Poly::zero();
        for br in &self.branches {
            let r = (&br.u * f)
                .rem(&br.w)
                .expect("branch moduli are nonconstant");
            acc += &(&br.w_prime * &r);
        }
        let deg_g = self.g.degree().expect("generator is nonzero");
        assert!(
            acc.degree().is_none_or(|d| d < deg_g),
            "CRT sum exceeded deg(g): the plan constants are wrong"
        );
        acc
    }
}

/// A K-bit message, most significant first: `bits()[0]` is m_{K−1}, the
/// coefficient of x^{K−1} and the first bit on the wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    bits: Vec<bool>,
}

/// An N-bit codeword, most significant first: `bits()[0]` is c_{N−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    bits: Vec<bool>,
}

fn bits_to_bytes(bits: &[bool]) -> Vec<u8> {
    let nbytes = bits.len().div_ceil(8);
    let pad = nbytes * 8 - bits.len();
    let mut out = vec![0u8; nbytes];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            let pos = pad + i;
            out[pos / 8] |= 0x80 >> (pos % 8);
        }
    }
    out
}

fn bytes_to_bits(bytes: &[u8], len: usize) -> Result<Vec<bool>> {
    let nbytes = len.div_ceil(8);
    if bytes.len() != nbytes {
        return Err(Error::LengthMismatch {
            expected: nbytes,
            got: bytes.len(),
        });
    }
    let pad = nbytes * 8 - len;
    for p in 0..pad {
        if bytes[p / 8] & (0x80 >> (p % 8)) != 0 {
            return Err(Error::NonZeroPadding);
        }
    }
    Ok((0..len)
        .map(|i| {
            let pos = pad + i;
            bytes[pos / 8] & (0x80 >> (pos % 8)) != 0
        })
        .collect())
}

fn hex_to_bytes(s: &str) -> Result<Vec<u8>> {
    if !s.len().is_multiple_of(2) {
        return Err(Error::PolyParse("hex string must have even length".into()));
    }
    (0..s.len() / 2)
        .map(|i| {
            u8::from_str_radix(&s[2 * i..2 * i + 2], 16).map_err(|_| {
                Error::PolyParse(format!("invalid hex byte {:?}", &s[2 * i..2 * i + 2]))
            })
        })
        .collect()
}

fn bytes_to_hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

macro_rules! bit_word_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn from_bits(bits: Vec<bool>) -> Self {
                $ty { bits }
            }

            pub fn zero(len: usize) -> Self {
                $ty {
                    bits: vec![false; len],
                }
            }

            pub fn len(&self) -> usize {
                self.bits.len()
            }

            pub fn is_empty(&self) -> bool {
                self.bits.is_empty()
            }

            pub fn bits(&self) -> &[bool] {
                &self.bits
            }

            /// Polynomial form: the wire-first bit becomes the coefficient
            /// of the highest exponent.
            pub fn to_poly(&self) -> Gf2Poly {
                Gf2Poly::from_bits_msb(&self.bits)
            }

            /// Inverse of `to_poly` at a fixed bit length; errors if the
            /// polynomial does not fit.
            pub fn from_poly(p: &Gf2Poly, len: usize) -> Result<Self> {
                if let Some(d) = p.degree() {
                    if d >= len {
                        return Err(Error::LengthMismatch {
                            expected: len,
                            got: d + 1,
                        });
                    }
                }
                Ok($ty {
                    bits: p.to_bits_msb(len),
                })
            }

            /// Byte form: ⌈len/8⌉ bytes, MSB-first, zero padding confined
            /// to the top of the first byte.
            pub fn to_bytes(&self) -> Vec<u8> {
                bits_to_bytes(&self.bits)
            }

            pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
                Ok($ty {
                    bits: bytes_to_bits(bytes, len)?,
                })
            }

            pub fn to_hex(&self) -> String {
                bytes_to_hex(&self.to_bytes())
            }

            pub fn from_hex(s: &str, len: usize) -> Result<Self> {
                Self::from_bytes(&hex_to_bytes(s.trim())?, len)
            }
        }
    };
}

bit_word_impl!(Message);
bit_word_impl!(Codeword);

/// Which machinery computes the parity remainder.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Schoolbook long division by g; the reference the others are held to.
    Naive,
    /// One serial division LFSR with divisor g — the architecture the CRT
    /// datapath replaces.
    LfsrDirect,
    /// The branch-parallel CRT datapath built from short circuits.
    Crt,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Naive, Backend::LfsrDirect, Backend::Crt];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Naive => "naive",
            Backend::LfsrDirect => "lfsr_direct",
            Backend::Crt => "crt",
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Backend::Naive),
            "lfsr_direct" | "lfsr-direct" => Ok(Backend::LfsrDirect),
            "crt" => Ok(Backend::Crt),
            _ => Err(Error::PolyParse(format!("unknown backend {s:?}"))),
        }
    }
}

/// Systematic encoding: c(x) = m(x)·x^{N−K} + Rem_g(m(x)·x^{N−K}).
///
/// The top K bits of the codeword are the message verbatim; all backends
/// produce identical output.
pub fn encode_systematic(code: &BchCode, m: &Message, backend: Backend) -> Result<Codeword> {
    if m.len() != code.k() {
        return Err(Error::LengthMismatch {
            expected: code.k(),
            got: m.len(),
        });
    }
    let shifted = m.to_poly().shifted_left(code.n() - code.k());
    let parity = match backend {
        Backend::Naive => shifted.rem(code.generator())?,
        Backend::LfsrDirect => {
            let mut div = LfsrCircuit::divider(code.generator())?;
            let (_, rem) = crate::lfsr::simulate_serial(&mut div, &shifted.to_bits_msb(code.n()));
            rem
        }
        Backend::Crt => {
            let plan = CrtPlan::new(code)?;
            let mut dp = Datapath::build(&plan);
            dp.remainder(m)?
        }
    };
    Codeword::from_poly(&(&shifted + &parity), code.n())
}

//! Binary BCH codes built from first principles, with a branch-parallel
//! systematic encoder.
//!
//! The pipeline: cyclotomic cosets over GF(2^t) give the minimal
//! polynomials w₁..w_r, their product is the generator g, and the parity
//! remainder Rem_g(m·x^{N−K}) is computable either by one long division
//! or — because the wᵢ are pairwise coprime — by r short, independent
//! branches recombined with precomputed constants. The [`lfsr`] module
//! simulates both architectures gate-accurately and [`report`] totals
//! their XOR counts and fanout, which is where the short-branch form wins:
//! its division-stage feedback fanout stays below t ≈ log₂N instead of
//! growing with the weight of g.
//!
//! ```
//! use bchcrt::{encode_systematic, Backend, BchCode, Message};
//!
//! let code = BchCode::build(4, 7, None).unwrap();
//! assert_eq!((code.n(), code.k()), (15, 5));
//! assert_eq!(code.generator().to_terms(), "x^10+x^8+x^5+x^4+x^2+x+1");
//!
//! let m = Message::from_bits(vec![true, false, true, true, false]);
//! let cw = encode_systematic(&code, &m, Backend::Crt).unwrap();
//! assert_eq!(&cw.bits()[..5], m.bits());
//! assert!(code.verify_codeword(&cw).unwrap());
//! ```

pub mod bch;
pub mod crt;
mod error;
pub mod gf2field;
pub mod gf2poly;
pub mod lfsr;
pub mod report;
pub mod selftest;

pub use bch::{BchCode, CodeDescriptor};
pub use crt::{encode_systematic, Backend, Codeword, CrtBranch, CrtPlan, Message};
pub use error::{Error, Result};
pub use gf2field::{cyclotomic_cosets, default_prim_poly, CyclotomicCoset, Gf2mElement, Gf2mField};
pub use gf2poly::Gf2Poly;
pub use lfsr::{
    simulate_serial, simulate_serial_traced, Datapath, LfsrCircuit, LfsrKind, XorSumTree,
};
pub use report::{cost_report, CodeSummary, CostReport, StepCost};

#[cfg(test)]
pub(crate) mod testutil {
    use proptest::prelude::*;

    use crate::crt::Message;
    use crate::gf2poly::Gf2Poly;
    pub use crate::selftest::SplitMix;

    pub fn rand_poly(rng: &mut SplitMix, bits: usize) -> Gf2Poly {
        rng.poly(bits)
    }

    pub fn rand_message(rng: &mut SplitMix, k: usize) -> Message {
        rng.message(k)
    }

    pub fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Gf2Poly> {
        proptest::collection::vec(any::<bool>(), 0..=max_deg + 1).prop_map(|bits| {
            let mut p = Gf2Poly::zero();
            for (i, b) in bits.iter().enumerate() {
                if *b {
                    p.set_coeff(i, true);
                }
            }
            p
        })
    }
}

//! Built-in verification suite behind the CLI `selftest` subcommand.
//!
//! Re-derives the three reference code constructions, checks the CRT
//! remainder and all encoder backends against schoolbook division, and
//! confirms the cost and fanout headlines. Randomized checks draw from a
//! fixed-seed generator so every run sees the same inputs.

use crate::bch::BchCode;
use crate::crt::{encode_systematic, Backend, CrtPlan, Message};
use crate::gf2poly::Gf2Poly;
use crate::lfsr::Datapath;
use crate::report::cost_report;

/// SplitMix64: tiny deterministic generator for reproducible test inputs.
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// Uniformly random polynomial with all coefficients below `bits`.
    pub fn poly(&mut self, bits: usize) -> Gf2Poly {
        let mut p = Gf2Poly::zero();
        for i in 0..bits {
            if self.next_bool() {
                p.set_coeff(i, true);
            }
        }
        p
    }

    pub fn message(&mut self, k: usize) -> Message {
        Message::from_bits((0..k).map(|_| self.next_bool()).collect())
    }
}

/// Outcome of one named check.
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(
    out: &mut Vec<CheckResult>,
    name: &'static str,
    f: impl FnOnce() -> Result<String, String>,
) {
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    out.push(CheckResult {
        name,
        passed,
        detail,
    });
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

/// Run the whole suite; every entry is independent, so a failure in one
/// check never hides another.
pub fn run_selftest() -> Vec<CheckResult> {
    let mut out = Vec::new();

    check(&mut out, "code_15_5_construction", || {
        let code = BchCode::build(4, 7, None).map_err(|e| e.to_string())?;
        expect("g", code.generator().to_hex(), "537".into())?;
        let hexes: Vec<String> = code.factors().iter().map(|w| w.to_hex()).collect();
        expect("factors", hexes, vec!["13".into(), "1f".into(), "7".into()])?;
        expect("(N, K, r)", (code.n(), code.k(), code.r()), (15, 5, 3))?;
        let reps: Vec<usize> = code.cosets().iter().map(|c| c.representative()).collect();
        expect("coset representatives", reps, vec![1, 3, 5])?;
        Ok("g = x^10+x^8+x^5+x^4+x^2+x+1 with its three factors".into())
    });

    check(&mut out, "code_15_5_min_distance", || {
        let code = BchCode::build(4, 7, None).map_err(|e| e.to_string())?;
        let mut min_weight = usize::MAX;
        for m in 1u32..(1 << code.k()) {
            let bits = (0..code.k())
                .map(|i| (m >> (code.k() - 1 - i)) & 1 == 1)
                .collect();
            let cw = encode_systematic(&code, &Message::from_bits(bits), Backend::Naive)
                .map_err(|e| e.to_string())?;
            min_weight = min_weight.min(cw.bits().iter().filter(|&&b| b).count());
        }
        if min_weight >= 7 {
            Ok(format!(
                "exhaustive minimum nonzero weight {min_weight} >= 7"
            ))
        } else {
            Err(format!("minimum nonzero weight {min_weight} < 7"))
        }
    });

    check(&mut out, "code_2047_1926_cost", || {
        let code = BchCode::build(11, 23, None).map_err(|e| e.to_string())?;
        expect("(N, K)", (code.n(), code.k()), (2047, 1926))?;
        expect("deg(g)", code.generator().degree(), Some(121))?;
        expect("r", code.r(), 11)?;
        if !code.factors().iter().all(|w| w.degree() == Some(11)) {
            return Err("factor of unexpected degree".into());
        }
        let plan = CrtPlan::new(&code).map_err(|e| e.to_string())?;
        let dp = Datapath::build(&plan);
        let rep = cost_report(&code, &plan, &dp);
        if rep.total_actual > 1595 {
            return Err(format!("total XOR count {} > 1595", rep.total_actual));
        }
        if rep.max_division_fanout > 11 {
            return Err(format!("division fanout {} > 11", rep.max_division_fanout));
        }
        Ok(format!(
            "{} XOR gates (<= 1595), fanout {} (<= 11, direct {})",
            rep.total_actual, rep.max_division_fanout, rep.direct_division_fanout
        ))
    });

    check(&mut out, "code_8191_7684_cost", || {
        let code = BchCode::build(13, 79, None).map_err(|e| e.to_string())?;
        expect("(N, K)", (code.n(), code.k()), (8191, 7684))?;
        expect("deg(g)", code.generator().degree(), Some(507))?;
        expect("r", code.r(), 39)?;
        if !code.factors().iter().all(|w| w.degree() == Some(13)) {
            return Err("factor of unexpected degree".into());
        }
        let plan = CrtPlan::new(&code).map_err(|e| e.to_string())?;
        let dp = Datapath::build(&plan);
        let rep = cost_report(&code, &plan, &dp);
        if rep.total_actual > 20865 {
            return Err(format!("total XOR count {} > 20865", rep.total_actual));
        }
        if rep.max_division_fanout > 13 {
            return Err(format!("division fanout {} > 13", rep.max_division_fanout));
        }
        Ok(format!(
            "{} XOR gates (<= 20865), fanout {} (<= 13, direct {})",
            rep.total_actual, rep.max_division_fanout, rep.direct_division_fanout
        ))
    });

    check(&mut out, "crt_remainder_vs_division", || {
        let mut rng = SplitMix::new(0xC0DE);
        let mut checked = 0usize;
        for (t, delta) in [(4u32, 7usize), (5, 7), (6, 9)] {
            let code = BchCode::build(t, delta, None).map_err(|e| e.to_string())?;
            let plan = CrtPlan::new(&code).map_err(|e| e.to_string())?;
            let deg_g = code.generator().degree().unwrap();
            for _ in 0..256 {
                let f = rng.poly(2 * deg_g);
                let want = f.rem(code.generator()).map_err(|e| e.to_string())?;
                if plan.remainder(&f) != want {
                    return Err(format!("CRT remainder mismatch for t={t}"));
                }
                checked += 1;
            }
        }
        Ok(format!(
            "{checked} random polynomials agree with schoolbook division"
        ))
    });

    check(&mut out, "backends_agree", || {
        let mut rng = SplitMix::new(0xBEEF);
        let mut checked = 0usize;
        for (t, delta) in [(4u32, 7usize), (5, 7), (6, 9)] {
            let code = BchCode::build(t, delta, None).map_err(|e| e.to_string())?;
            for _ in 0..128 {
                let m = rng.message(code.k());
                let naive =
                    encode_systematic(&code, &m, Backend::Naive).map_err(|e| e.to_string())?;
                if &naive.bits()[..code.k()] != m.bits() {
                    return Err("systematic prefix mismatch".into());
                }
                for b in [Backend::LfsrDirect, Backend::Crt] {
                    let cw = encode_systematic(&code, &m, b).map_err(|e| e.to_string())?;
                    if cw != naive {
                        return Err(format!("{} disagrees with naive for t={t}", b.name()));
                    }
                }
                if !code.verify_codeword(&naive).map_err(|e| e.to_string())? {
                    return Err("encoded word failed the root check".into());
                }
                checked += 1;
            }
        }
        Ok(format!(
            "{checked} messages encode identically through all three backends"
        ))
    });

    check(&mut out, "prime_t_factor_law", || {
        for (t, delta) in [(11u32, 23usize), (13, 79)] {
            let code = BchCode::build(t, delta, None).map_err(|e| e.to_string())?;
            let deg_g = code.generator().degree().unwrap();
            expect("r", code.r(), deg_g / t as usize)?;
        }
        Ok("r = deg(g)/t for t in {11, 13}".into())
    });

    out
}

//! Bit-accurate serial LFSR circuits and the four-stage encoder datapath.
//!
//! Two circuit shapes are modeled, both clocked one input bit per cycle,
//! most significant coefficient first:
//!
//! * **multiply** by h(x): a transversal (feed-forward) filter. The last
//!   deg(h) input bits sit in a delay line; each output bit is the XOR of
//!   the taps selected by h. After the input plus deg(h) flush zeros, the
//!   output stream is the product, MSB first. Combining nz(h) taps costs
//!   nz(h)−1 XOR gates, and no net fans out to more than two loads, so
//!   the stage pipelines freely.
//! * **divide** by h(x): the classic feedback register. Register cell j
//!   holds a running remainder coefficient; the shifted-out top bit is
//!   fed back into every tap of h. After all input bits have been clocked
//!   the register holds the remainder. One XOR sits on each nonzero,
//!   non-leading tap (nz(h)−1 total), and the feedback net drives all of
//!   them at once — that fanout of nz(h)−1 is what caps the clock rate of
//!   a long divider and what the branch-parallel datapath removes.
//!
//! [`Datapath`] chains r multiply(uᵢ) → divide(wᵢ) → multiply(wᵢ')
//! branches and XORs the branch outputs. Stage handoff is modeled at
//! polynomial value level; cycle alignment between stages is not part of
//! the model.

use std::io::{self, Write};

use crate::crt::{CrtPlan, Message};
use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;

const BITS: usize = 64;

/// A fixed-width bit register, bit 0 first.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitReg {
    words: Vec<u64>,
    len: usize,
}

impl BitReg {
    fn new(len: usize) -> Self {
        BitReg {
            words: vec![0; len.div_ceil(BITS)],
            len,
        }
    }

    fn clear(&mut self) {
        self.words.fill(0);
    }

    fn top_bit(&self) -> bool {
        if self.len == 0 {
            return false;
        }
        let i = self.len - 1;
        (self.words[i / BITS] >> (i % BITS)) & 1 == 1
    }

    /// Shift every cell up one position, insert `low` at bit 0, drop the
    /// old top bit.
    fn shift_up(&mut self, low: bool) {
        if self.len == 0 {
            return;
        }
        let mut carry = u64::from(low);
        for w in &mut self.words {
            let next = *w >> (BITS - 1);
            *w = (*w << 1) | carry;
            carry = next;
        }
        let top = self.len % BITS;
        if top != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << top) - 1;
        }
    }

    fn xor_words(&mut self, mask: &[u64]) {
        for (w, m) in self.words.iter_mut().zip(mask) {
            *w ^= m;
        }
    }

    /// Parity of the AND with a mask: one combined XOR-tree readout.
    fn parity_and(&self, mask: &[u64]) -> bool {
        self.words
            .iter()
            .zip(mask)
            .fold(0u64, |acc, (w, m)| acc ^ (w & m))
            .count_ones()
            & 1
            == 1
    }

    fn as_poly(&self) -> Gf2Poly {
        let mut p = Gf2Poly::zero();
        for i in 0..self.len {
            if (self.words[i / BITS] >> (i % BITS)) & 1 == 1 {
                p.set_coeff(i, true);
            }
        }
        p
    }

    /// Fixed-width hex image of the register, one digit per four cells,
    /// most significant first. A zero-length register prints as `-`.
    fn hex(&self) -> String {
        if self.len == 0 {
            return "-".to_string();
        }
        let digits = self.len.div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut v = 0u8;
            for bit in 0..4 {
                let i = d * 4 + bit;
                if i < self.len && (self.words[i / BITS] >> (i % BITS)) & 1 == 1 {
                    v |= 1 << bit;
                }
            }
            s.push(char::from_digit(v as u32, 16).expect("nibble"));
        }
        s
    }
}

/// Circuit flavor; see the module docs for the two structures.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LfsrKind {
    Multiply,
    Divide,
}

/// A serial-in LFSR realizing multiplication or division by fixed taps.
#[derive(Clone, Debug)]
pub struct LfsrCircuit {
    kind: LfsrKind,
    taps: Gf2Poly,
    state: BitReg,
    /// Multiply: delay-line taps, bit j selecting cell j (input from j+1
    /// cycles ago). Divide: the non-leading tap bits of h.
    mask: Vec<u64>,
    xor_count: usize,
    feedback_fanout: Option<usize>,
    input_fanout: usize,
}

impl LfsrCircuit {
    /// Serial multiplier by `h`; rejects zero taps.
    pub fn multiplier(h: &Gf2Poly) -> Result<Self> {
        let deg = h.degree().ok_or(Error::ZeroTaps)?;
        let state = BitReg::new(deg);
        // Output = h_deg·in ⊕ Σ_j h_{deg−1−j}·state[j].
        let mut mask = vec![0u64; state.words.len()];
        for j in 0..deg {
            if h.coeff(deg - 1 - j) {
                mask[j / BITS] |= 1 << (j % BITS);
            }
        }
        Ok(LfsrCircuit {
            kind: LfsrKind::Multiply,
            taps: h.clone(),
            state,
            mask,
            xor_count: h.nz() - 1,
            feedback_fanout: None,
            // The raw input feeds the delay line and (leading tap) the
            // output XOR; a feed-forward net like this pipelines freely.
            input_fanout: if deg == 0 { 1 } else { 2 },
        })
    }

    /// Serial divider by `h`; the divisor must have degree at least 1.
    pub fn divider(h: &Gf2Poly) -> Result<Self> {
        let deg = match h.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::ConstantDivisor),
        };
        let state = BitReg::new(deg);
        let mut mask = vec![0u64; state.words.len()];
        for j in 0..deg {
            if h.coeff(j) {
                mask[j / BITS] |= 1 << (j % BITS);
            }
        }
        Ok(LfsrCircuit {
            kind: LfsrKind::Divide,
            taps: h.clone(),
            state,
            mask,
            xor_count: h.nz() - 1,
            feedback_fanout: Some(h.nz() - 1),
            input_fanout: 1,
        })
    }

    pub fn kind(&self) -> LfsrKind {
        self.kind
    }

    pub fn taps(&self) -> &Gf2Poly {
        &self.taps
    }

    /// Two-input XOR gates in this realization: nz(taps) − 1 for both
    /// kinds, within the nz(h) budget either way.
    pub fn xor_count(&self) -> usize {
        self.xor_count
    }

    /// Loads on the feedback net (dividers only): one per nonzero
    /// non-leading tap, i.e. nz(h) − 1.
    pub fn feedback_fanout(&self) -> Option<usize> {
        self.feedback_fanout
    }

    /// Loads on the raw input net. For transversal multipliers this is at
    /// most 2 regardless of the taps.
    pub fn input_fanout(&self) -> usize {
        self.input_fanout
    }

    /// Register width, deg(taps) cells.
    pub fn state_len(&self) -> usize {
        self.state.len
    }

    pub fn reset(&mut self) {
        self.state.clear();
    }

    /// Advance one clock. Returns the output bit: the product stream for
    /// multipliers, the shifted-out (quotient) bit for dividers.
    pub fn step(&mut self, input: bool) -> bool {
        match self.kind {
            LfsrKind::Multiply => {
                let lead = self.taps.coeff(self.state.len); // always 1
                let out = (lead && input) ^ self.state.parity_and(&self.mask);
                self.state.shift_up(input);
                out
            }
            LfsrKind::Divide => {
                let feedback = self.state.top_bit();
                self.state.shift_up(input);
                if feedback {
                    self.state.xor_words(&self.mask);
                }
                feedback
            }
        }
    }

    /// Register contents as a polynomial; for dividers this is the running
    /// remainder.
    pub fn state_poly(&self) -> Gf2Poly {
        self.state.as_poly()
    }

    /// Register contents in the fixed-width hex form used by trace dumps.
    pub fn state_hex(&self) -> String {
        self.state.hex()
    }
}

/// Reset the circuit, clock `input` through it and return the output bits
/// together with the final register state.
///
/// For a divider fed deg(u)+1 bits MSB-first the final state is
/// Rem_h(u). For a multiplier fed deg(u)+1 bits plus deg(h) flush zeros
/// the output stream is u·h, MSB first.
pub fn simulate_serial(c: &mut LfsrCircuit, input: &[bool]) -> (Vec<bool>, Gf2Poly) {
    c.reset();
    let out = input.iter().map(|&b| c.step(b)).collect();
    (out, c.state_poly())
}

/// [`simulate_serial`] with a per-clock trace line written to `sink`:
/// `<label> <cycle> <in> <out> <state-hex>`, cycles counted from 1, state
/// shown after the clock edge.
pub fn simulate_serial_traced<W: Write + ?Sized>(
    c: &mut LfsrCircuit,
    input: &[bool],
    label: &str,
    sink: &mut W,
) -> io::Result<(Vec<bool>, Gf2Poly)> {
    c.reset();
    let mut out = Vec::with_capacity(input.len());
    for (cycle, &b) in input.iter().enumerate() {
        let o = c.step(b);
        writeln!(
            sink,
            "{label} {} {} {} {}",
            cycle + 1,
            u8::from(b),
            u8::from(o),
            c.state_hex()
        )?;
        out.push(o);
    }
    Ok((out, c.state_poly()))
}

fn multiply_poly(c: &mut LfsrCircuit, f: &Gf2Poly, in_width: usize) -> Gf2Poly {
    let flush = c.state_len();
    let mut bits = f.to_bits_msb(in_width);
    bits.resize(in_width + flush, false);
    let (out, _) = simulate_serial(c, &bits);
    Gf2Poly::from_bits_msb(&out)
}

fn divide_poly(c: &mut LfsrCircuit, f: &Gf2Poly, in_width: usize) -> Gf2Poly {
    let bits = f.to_bits_msb(in_width);
    let (_, rem) = simulate_serial(c, &bits);
    rem
}

/// The XOR merge of the r branch outputs, each deg(g) coefficients wide.
#[derive(Clone, Debug)]
pub struct XorSumTree {
    inputs: usize,
    width: usize,
}

impl XorSumTree {
    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Tree depth ⌈log₂ r⌉; a chain would be r−1 deep for the same gate
    /// count.
    pub fn depth(&self) -> usize {
        self.inputs.next_power_of_two().trailing_zeros() as usize
    }

    /// Two-input XOR count for merging full deg(g)-wide branch outputs:
    /// (r−1) per bit position.
    pub fn full_width_xor_count(&self) -> usize {
        (self.inputs - 1) * self.width
    }
}

/// The four-stage branch-parallel remainder datapath.
pub struct Datapath {
    n: usize,
    k: usize,
    stage1: Vec<LfsrCircuit>,
    stage2: Vec<LfsrCircuit>,
    stage3: Vec<LfsrCircuit>,
    sum: XorSumTree,
}

impl Datapath {
    /// Wire the stages from a CRT plan: multipliers by uᵢ, dividers by
    /// wᵢ, multipliers by wᵢ', and the final XOR merge.
    pub fn build(plan: &CrtPlan) -> Self {
        let deg_g = plan.g().degree().expect("generator is nonzero");
        let stage1 = plan
            .branches()
            .iter()
            .map(|b| LfsrCircuit::multiplier(&b.u).expect("inverse constants are nonzero"))
            .collect();
        let stage2 = plan
            .branches()
            .iter()
            .map(|b| LfsrCircuit::divider(&b.w).expect("factors have degree >= 1"))
            .collect();
        let stage3 = plan
            .branches()
            .iter()
            .map(|b| LfsrCircuit::multiplier(&b.w_prime).expect("cofactors are nonzero"))
            .collect();
        Datapath {
            n: plan.n(),
            k: plan.n() - deg_g,
            stage1,
            stage2,
            stage3,
            sum: XorSumTree {
                inputs: plan.r(),
                width: deg_g,
            },
        }
    }

    pub fn r(&self) -> usize {
        self.sum.inputs
    }

    pub fn stage1(&self) -> &[LfsrCircuit] {
        &self.stage1
    }

    pub fn stage2(&self) -> &[LfsrCircuit] {
        &self.stage2
    }

    pub fn stage3(&self) -> &[LfsrCircuit] {
        &self.stage3
    }

    pub fn sum_tree(&self) -> &XorSumTree {
        &self.sum
    }

    /// Largest feedback fanout across the division stage. Bounded by t
    /// for any BCH-built plan, since deg(wᵢ) ≤ t.
    pub fn max_division_fanout(&self) -> usize {
        self.stage2
            .iter()
            .map(|c| c.feedback_fanout().expect("stage 2 circuits are dividers"))
            .max()
            .unwrap_or(0)
    }

    fn run_branch(
        s1: &mut LfsrCircuit,
        s2: &mut LfsrCircuit,
        s3: &mut LfsrCircuit,
        shifted: &Gf2Poly,
        n: usize,
    ) -> Gf2Poly {
        let scaled = multiply_poly(s1, shifted, n);
        let rem = divide_poly(s2, &scaled, n + s1.state_len());
        multiply_poly(s3, &rem, s2.state_len())
    }

    /// Simulate all branches serially and merge: returns
    /// Rem_g(m(x)·x^{N−K}), bit-identical to [`CrtPlan::remainder`] and to
    /// long division.
    pub fn remainder(&mut self, m: &Message) -> Result<Gf2Poly> {
        let shifted = self.shifted_message(m)?;
        let n = self.n;
        let mut acc = Gf2Poly::zero();
        for ((s1, s2), s3) in self
            .stage1
            .iter_mut()
            .zip(&mut self.stage2)
            .zip(&mut self.stage3)
        {
            acc += &Self::run_branch(s1, s2, s3, &shifted, n);
        }
        self.check_sum_degree(&acc);
        Ok(acc)
    }

    /// Branch-concurrent variant: one thread per branch, merged in branch
    /// order. XOR is associative and commutative, so the result is
    /// identical to the serial run.
    pub fn remainder_parallel(&mut self, m: &Message) -> Result<Gf2Poly> {
        let shifted = self.shifted_message(m)?;
        let shifted = &shifted;
        let n = self.n;
        let mut outputs: Vec<Gf2Poly> = vec![Gf2Poly::zero(); self.r()];
        std::thread::scope(|scope| {
            for (((s1, s2), s3), slot) in self
                .stage1
                .iter_mut()
                .zip(&mut self.stage2)
                .zip(&mut self.stage3)
                .zip(&mut outputs)
            {
                scope.spawn(move || {
                    *slot = Self::run_branch(s1, s2, s3, shifted, n);
                });
            }
        });
        let mut acc = Gf2Poly::zero();
        for q in &outputs {
            acc += q;
        }
        self.check_sum_degree(&acc);
        Ok(acc)
    }

    /// [`remainder`](Self::remainder) with per-clock traces of every
    /// circuit, labeled `s<stage>b<branch>`.
    pub fn remainder_traced<W: Write + ?Sized>(
        &mut self,
        m: &Message,
        sink: &mut W,
    ) -> Result<Gf2Poly> {
        let shifted = self.shifted_message(m)?;
        let n = self.n;
        let mut acc = Gf2Poly::zero();
        for (i, ((s1, s2), s3)) in self
            .stage1
            .iter_mut()
            .zip(&mut self.stage2)
            .zip(&mut self.stage3)
            .enumerate()
        {
            let io_err = |e: io::Error| Error::Io(e.to_string());

            let mut bits = shifted.to_bits_msb(n);
            bits.resize(n + s1.state_len(), false);
            let (out1, _) =
                simulate_serial_traced(s1, &bits, &format!("s1b{i}"), sink).map_err(io_err)?;

            let (_, rem) =
                simulate_serial_traced(s2, &out1, &format!("s2b{i}"), sink).map_err(io_err)?;

            let mut rem_bits = rem.to_bits_msb(s2.state_len());
            rem_bits.resize(s2.state_len() + s3.state_len(), false);
            let (out3, _) =
                simulate_serial_traced(s3, &rem_bits, &format!("s3b{i}"), sink).map_err(io_err)?;

            acc += &Gf2Poly::from_bits_msb(&out3);
        }
        self.check_sum_degree(&acc);
        Ok(acc)
    }

    fn shifted_message(&self, m: &Message) -> Result<Gf2Poly> {
        if m.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: m.len(),
            });
        }
        Ok(m.to_poly().shifted_left(self.n - self.k))
    }

    fn check_sum_degree(&self, acc: &Gf2Poly) {
        assert!(
            acc.degree().is_none_or(|d| d < self.sum.width),
            "branch sum exceeded deg(g)"
        );
    }
}

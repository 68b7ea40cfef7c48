//! Per-thread primitive counters.
//!
//! Counting is off unless a run is wrapped in [`instrumented`]. The active
//! counter set lives in a thread-local slot, so a context is never shared
//! between threads and nothing is counted outside a profiling run.

use std::cell::RefCell;

/// Raw primitive-invocation counts collected during one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    pub keccak_permutations: u64,
    pub keccak_absorbed_bytes: u64,
    pub keccak_squeezed_bytes: u64,
    pub gf_muls: u64,
    /// Sparse-times-dense multiplications in the ring.
    pub ring_muls: u64,
    /// Sum of sparse weights over all ring multiplications.
    pub ring_coordinates: u64,
    /// Accumulator words read-modify-written during multiplication and reduction.
    pub ring_word_ops: u64,
    /// Ring additions (word-wise XOR of two ring elements).
    pub ring_adds: u64,
    /// Bytes moved by copies, clears and (de)serialization.
    pub bytes_copied: u64,
    /// Raw 24-bit draws consumed by fixed-weight sampling.
    pub samples_drawn: u64,
    pub rm_blocks_decoded: u64,
    pub rs_encodes: u64,
    pub rs_decodes: u64,
}

impl Counters {
    pub fn merge(&mut self, other: &Counters) {
        self.keccak_permutations += other.keccak_permutations;
        self.keccak_absorbed_bytes += other.keccak_absorbed_bytes;
        self.keccak_squeezed_bytes += other.keccak_squeezed_bytes;
        self.gf_muls += other.gf_muls;
        self.ring_muls += other.ring_muls;
        self.ring_coordinates += other.ring_coordinates;
        self.ring_word_ops += other.ring_word_ops;
        self.ring_adds += other.ring_adds;
        self.bytes_copied += other.bytes_copied;
        self.samples_drawn += other.samples_drawn;
        self.rm_blocks_decoded += other.rm_blocks_decoded;
        self.rs_encodes += other.rs_encodes;
        self.rs_decodes += other.rs_decodes;
    }
}

thread_local! {
    static ACTIVE: RefCell<Option<Counters>> = const { RefCell::new(None) };
}

#[inline]
pub(crate) fn record(f: impl FnOnce(&mut Counters)) {
    ACTIVE.with(|slot| {
        if let Some(c) = slot.borrow_mut().as_mut() {
            f(c);
        }
    });
}

/// Runs `f` with counting enabled on this thread and returns its result
/// together with the counts it produced. Nested calls are isolated: the
/// outer run resumes with its own counts once the inner one returns.
pub fn instrumented<R>(f: impl FnOnce() -> R) -> (R, Counters) {
    let outer = ACTIVE.with(|slot| slot.replace(Some(Counters::default())));
    let out = f();
    let counts = ACTIVE.with(|slot| slot.replace(outer)).unwrap_or_default();
    (out, counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn silent_outside_a_run() {
        record(|c| c.gf_muls += 1);
        let ((), c) = instrumented(|| ());
        assert_eq!(c, Counters::default());
    }

    #[test]
    fn nested_runs_are_isolated() {
        let ((), outer) = instrumented(|| {
            record(|c| c.gf_muls += 1);
            let ((), inner) = instrumented(|| record(|c| c.gf_muls += 5));
            assert_eq!(inner.gf_muls, 5);
            record(|c| c.gf_muls += 1);
        });
        assert_eq!(outer.gf_muls, 2);
    }
}

//! The extended binary Golay code and its complementary-pair halving.
//!
//! The code is generated by `[I | P]` where `P = J − A` for the adjacency
//! matrix `A` of the icosahedron. The vertex labeling is fixed here once and
//! for all (two poles plus an upper and a lower pentagon); any relabeling
//! yields an equivalent code, so correctness is asserted through labeling-
//! invariant parameters: 4096 words, minimum weight 8, weight distribution
//! (1, 759, 2576, 759, 1), closure under complement.

/// Codewords are 24-bit masks; bit `i` is coordinate `i`. Coordinates 0–11
/// carry the identity block, 12–23 the icosahedron block.
pub type Codeword = u32;

pub const WORD_BITS: usize = 24;
pub const ALL_ONES: Codeword = (1 << 24) - 1;

/// Weight-8 codeword support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Octad {
    /// The eight coordinates, ascending.
    pub support: [u8; 8],
    /// The codeword whose support this is.
    pub word: Codeword,
}

/// The extended binary Golay code with its generator and full codeword list.
#[derive(Debug, Clone)]
pub struct GolayCode {
    /// Twelve generator rows `[I | P]`.
    pub generator: [Codeword; 12],
    /// All 4096 codewords, indexed by message: `codewords[m] = encode(m)`.
    pub codewords: Vec<Codeword>,
    /// The 759 octads in codeword-index order.
    pub octads: Vec<Octad>,
}

/// Icosahedron adjacency under the fixed labeling: vertex 0 is a pole joined
/// to the upper pentagon 1–5, vertex 11 the opposite pole joined to the lower
/// pentagon 6–10, and upper vertex `1+i` is joined to lower vertices `6+i`
/// and `6+((i+4) mod 5)`.
fn icosahedron_adjacency() -> [[bool; 12]; 12] {
    let mut adj = [[false; 12]; 12];
    let mut join = |a: usize, b: usize| {
        adj[a][b] = true;
        adj[b][a] = true;
    };
    for i in 0..5 {
        join(0, 1 + i);
        join(11, 6 + i);
        join(1 + i, 1 + (i + 1) % 5);
        join(6 + i, 6 + (i + 1) % 5);
        join(1 + i, 6 + i);
        join(1 + i, 6 + (i + 4) % 5);
    }
    adj
}

/// Builds the code, checking every labeling-invariant parameter.
///
/// Panics if the construction does not produce the Golay parameters; that
/// would mean the adjacency table above is not an icosahedron.
pub fn generate_golay() -> GolayCode {
    let adj = icosahedron_adjacency();
    let mut generator = [0u32; 12];
    for (r, row) in generator.iter_mut().enumerate() {
        *row = 1 << r;
        for c in 0..12 {
            // P = J − A: ones everywhere except across icosahedron edges.
            if !adj[r][c] {
                *row |= 1 << (12 + c);
            }
        }
        debug_assert_eq!(row.count_ones(), 8);
    }

    let mut codewords = Vec::with_capacity(4096);
    for msg in 0u32..4096 {
        let mut w = 0u32;
        for (r, row) in generator.iter().enumerate() {
            if msg >> r & 1 == 1 {
                w ^= row;
            }
        }
        codewords.push(w);
    }

    // Parameter validation.
    let mut dist = [0usize; 25];
    for &w in &codewords {
        dist[w.count_ones() as usize] += 1;
    }
    assert_eq!(dist[0], 1, "zero word");
    assert_eq!(dist[8], 759, "octad count");
    assert_eq!(dist[12], 2576, "dodecad count");
    assert_eq!(dist[16], 759, "complement octads");
    assert_eq!(dist[24], 1, "all-ones word");
    assert!(
        (1..8).all(|k| dist[k] == 0) && dist.iter().sum::<usize>() == 4096,
        "minimum nonzero weight must be 8"
    );

    let octads = codewords
        .iter()
        .filter(|w| w.count_ones() == 8)
        .map(|&word| {
            let mut support = [0u8; 8];
            let mut n = 0;
            for b in 0..24 {
                if word >> b & 1 == 1 {
                    support[n] = b as u8;
                    n += 1;
                }
            }
            Octad { support, word }
        })
        .collect();

    GolayCode {
        generator,
        codewords,
        octads,
    }
}

impl GolayCode {
    /// Selects one codeword from each complementary pair so that the
    /// real-vector sum of the selected words is exactly half the total sum:
    /// the words whose first three coordinates are 111, 100, 010 or 001.
    pub fn half(&self) -> Vec<Codeword> {
        self.codewords
            .iter()
            .copied()
            .filter(|&w| Self::in_half(w))
            .collect()
    }

    /// Membership test for the fixed half: first three bits in
    /// {111, 100, 010, 001}, i.e. odd parity on coordinates 0–2.
    pub fn in_half(w: Codeword) -> bool {
        (w & 0b111).count_ones() % 2 == 1
    }

    /// Componentwise real sum over a list of codewords.
    pub fn coordinate_sums(words: &[Codeword]) -> [u64; 24] {
        let mut s = [0u64; 24];
        for &w in words {
            for (b, acc) in s.iter_mut().enumerate() {
                *acc += (w >> b & 1) as u64;
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_parameters() {
        let code = generate_golay();
        assert_eq!(code.codewords.len(), 4096);
        assert_eq!(code.octads.len(), 759);
        assert!(code.codewords.contains(&ALL_ONES));
        // Closed under complement.
        let set: std::collections::HashSet<_> = code.codewords.iter().copied().collect();
        assert_eq!(set.len(), 4096);
        assert!(code.codewords.iter().all(|w| set.contains(&(w ^ ALL_ONES))));
    }

    #[test]
    fn code_is_linear_and_self_dual_on_samples() {
        let code = generate_golay();
        let set: std::collections::HashSet<_> = code.codewords.iter().copied().collect();
        // XOR closure on a deterministic sample grid.
        for i in (0..4096).step_by(97) {
            for j in (0..4096).step_by(131) {
                assert!(set.contains(&(code.codewords[i] ^ code.codewords[j])));
            }
        }
        // Self-duality: all generator rows pairwise even overlap.
        for a in 0..12 {
            for b in 0..12 {
                let overlap = (code.generator[a] & code.generator[b]).count_ones();
                assert_eq!(overlap % 2, 0);
            }
        }
    }

    #[test]
    fn half_selection_properties() {
        let code = generate_golay();
        let half = code.half();
        assert_eq!(half.len(), 2048);
        // One from each complementary pair.
        for &w in &half {
            assert!(!GolayCode::in_half(w ^ ALL_ONES));
        }
        // Total sum: every coordinate is 1 in exactly half of all codewords.
        let total = GolayCode::coordinate_sums(&code.codewords);
        assert!(total.iter().all(|&s| s == 2048));
        // Selected sum equals half the total in every coordinate.
        let sel = GolayCode::coordinate_sums(&half);
        assert!(sel.iter().all(|&s| s == 1024));
    }

    #[test]
    fn octad_supports_are_codewords() {
        let code = generate_golay();
        for o in code.octads.iter().step_by(50) {
            let mask: u32 = o.support.iter().fold(0, |m, &b| m | 1 << b);
            assert_eq!(mask, o.word);
            assert_eq!(o.word.count_ones(), 8);
        }
    }
}

//! Exhaustive Max-Cut by Gray-code enumeration.
//!
//! Vertex 0 is pinned to +1, so `2^(n−1)` states are visited. The search
//! space is split into a fixed number of blocks on the highest vertices;
//! blocks run in parallel and are merged in block order, so the answer does
//! not depend on how many workers execute them.

use rayon::prelude::*;

use super::{cut_value, Graph, SpinVector};
use crate::error::{Error, Result};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 30;

/// Number of high vertices fixed per block.
const SPLIT_BITS: usize = 6;

/// Exact maximum cut with the default vertex cap.
pub fn brute_force_maxcut(g: &Graph) -> Result<(f64, SpinVector)> {
    brute_force_maxcut_with_cap(g, DEFAULT_BRUTE_FORCE_CAP)
}

/// Exact maximum cut, refusing graphs with more than `cap` vertices.
///
/// Ties are broken toward the lexicographically smallest spin vector
/// (−1 before +1) among those with vertex 0 up.
pub fn brute_force_maxcut_with_cap(g: &Graph, cap: usize) -> Result<(f64, SpinVector)> {
    let n = g.n();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    if n > 63 {
        return Err(Error::TooLarge { n, cap: 63 });
    }
    if n == 1 {
        return Ok((0.0, SpinVector::all_up(1)));
    }
    let free = n - 1;
    let split = free.min(SPLIT_BITS);
    let inner = free - split;
    let exact = g.has_integer_weights();
    let tol = 1e-9 * (1.0 + g.edges().iter().map(|e| e.w.abs()).sum::<f64>());

    let block_best: Vec<(f64, u64)> = (0u64..1 << split)
        .into_par_iter()
        .map(|block| search_block(g, block << (1 + inner), inner, exact, tol))
        .collect();

    let mut best: Option<(f64, u64)> = None;
    for cand in block_best {
        best = Some(match best {
            None => cand,
            Some(cur) => pick(cur, cand, exact, tol),
        });
    }
    let (_, mask) = best.expect("at least one block");
    let spins = SpinVector::from_down_mask(mask, n);
    let value = cut_value(g, &spins)?;
    Ok((value, spins))
}

/// `a` precedes `b` lexicographically when, at the lowest differing vertex,
/// `a` holds the down spin.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

fn pick(cur: (f64, u64), cand: (f64, u64), exact: bool, tol: f64) -> (f64, u64) {
    let tied = if exact { cand.0 == cur.0 } else { (cand.0 - cur.0).abs() <= tol };
    if tied {
        if lex_less(cand.1, cur.1) {
            cand
        } else {
            cur
        }
    } else if cand.0 > cur.0 {
        cand
    } else {
        cur
    }
}

fn exact_cut(g: &Graph, mask: u64) -> f64 {
    g.edges().iter().filter(|e| (mask >> e.i ^ mask >> e.j) & 1 == 1).map(|e| e.w).sum()
}

/// Best state within the block whose high bits are `base`; the `inner` free
/// bits are vertices `1..=inner`.
fn search_block(g: &Graph, base: u64, inner: usize, exact: bool, tol: f64) -> (f64, u64) {
    let n = g.n();
    let mut spins: Vec<f64> = (0..n).map(|i| if base >> i & 1 == 1 { -1.0 } else { 1.0 }).collect();
    let mut mask = base;
    let mut cut = exact_cut(g, mask);
    let mut best_cut = cut;
    let mut best_mask = mask;

    for step in 1u64..1 << inner {
        let v = 1 + step.trailing_zeros() as usize;
        let sv = spins[v];
        // Edges to same-side neighbors become cut, the others uncut.
        let mut delta = 0.0;
        for &(u, w) in g.neighbors(v) {
            delta += w * sv * spins[u];
        }
        spins[v] = -sv;
        mask ^= 1 << v;
        cut += delta;

        if exact {
            if cut > best_cut || (cut == best_cut && lex_less(mask, best_mask)) {
                best_cut = cut;
                best_mask = mask;
            }
        } else if cut > best_cut + tol {
            best_cut = cut;
            best_mask = mask;
        } else if cut >= best_cut - tol {
            // Near tie: settle it on freshly summed values.
            let fresh = exact_cut(g, mask);
            let (c, m) = pick((exact_cut(g, best_mask), best_mask), (fresh, mask), false, tol);
            best_cut = c;
            best_mask = m;
        }
    }
    if !exact {
        best_cut = exact_cut(g, best_mask);
    }
    (best_cut, best_mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_random_graph, WeightModel};
    use proptest::prelude::*;

    /// Independent oracle: plain double loop over every state, vertex 0 free.
    fn enumerate_all(g: &Graph) -> f64 {
        let n = g.n();
        let mut best = f64::NEG_INFINITY;
        for mask in 0u64..1 << n {
            let mut c = 0.0;
            for i in 0..n {
                for &(j, w) in g.neighbors(i) {
                    if j > i && (mask >> i & 1) != (mask >> j & 1) {
                        c += w;
                    }
                }
            }
            best = best.max(c);
        }
        best
    }

    #[test]
    fn triangle() {
        let g = Graph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let (c, s) = brute_force_maxcut(&g).unwrap();
        assert_eq!(c, 2.0);
        assert_eq!(s.get(0), 1);
        // Lexicographically smallest maximizer with vertex 0 up.
        assert_eq!(s.as_slice(), &[1, -1, -1]);
    }

    #[test]
    fn negative_edge_stays_uncut() {
        let g = Graph::new(2, [(0, 1, -1.0)]).unwrap();
        let (c, s) = brute_force_maxcut(&g).unwrap();
        assert_eq!(c, 0.0);
        assert_eq!(s.as_slice(), &[1, 1]);
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1, []).unwrap();
        assert_eq!(brute_force_maxcut(&g).unwrap(), (0.0, SpinVector::all_up(1)));
    }

    #[test]
    fn refuses_over_cap() {
        let g = gen_random_graph(12, 0.5, WeightModel::PlusMinusOne, 1).unwrap();
        assert_eq!(brute_force_maxcut_with_cap(&g, 10), Err(Error::TooLarge { n: 12, cap: 10 }));
        let msg = brute_force_maxcut_with_cap(&g, 10).unwrap_err().to_string();
        assert!(msg.contains("raise the cap"), "{msg}");
    }

    #[test]
    fn independent_of_worker_count() {
        let g = gen_random_graph(18, 0.4, WeightModel::RealRange { lo: -2.0, hi: 2.0 }, 5).unwrap();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let eight = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
        let a = one.install(|| brute_force_maxcut(&g).unwrap());
        let b = eight.install(|| brute_force_maxcut(&g).unwrap());
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn matches_full_enumeration(
            n in 2usize..=12,
            density in 0.1f64..1.0,
            seed in any::<u64>(),
            real in any::<bool>(),
        ) {
            let model = if real {
                WeightModel::RealRange { lo: -3.0, hi: 3.0 }
            } else {
                WeightModel::IntRange { lo: -4, hi: 4 }
            };
            let g = gen_random_graph(n, density, model, seed).unwrap();
            let (c, s) = brute_force_maxcut(&g).unwrap();
            let oracle = enumerate_all(&g);
            prop_assert!((c - oracle).abs() <= 1e-9 * (1.0 + oracle.abs()));
            prop_assert_eq!(s.get(0), 1);
            prop_assert!((cut_value(&g, &s).unwrap() - c).abs() <= 1e-12);
        }

        #[test]
        fn tie_break_is_lexicographic(n in 2usize..=10, density in 0.1f64..1.0, seed in any::<u64>()) {
            let g = gen_random_graph(n, density, WeightModel::PlusMinusOne, seed).unwrap();
            let (c, s) = brute_force_maxcut(&g).unwrap();
            // Smallest maximizer in (−1 < +1) order, vertex 0 up.
            let mut first = None;
            let mut all: Vec<SpinVector> = (0u64..1 << (n - 1))
                .map(|m| SpinVector::from_down_mask(m << 1, n))
                .filter(|sv| cut_value(&g, sv).unwrap() == c)
                .collect();
            all.sort();
            if let Some(x) = all.into_iter().next() {
                first = Some(x);
            }
            prop_assert_eq!(Some(s), first);
        }
    }
}

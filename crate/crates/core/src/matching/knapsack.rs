//! 0-1 knapsack by dynamic programming over capacity.

/// Best total value with total weight at most `capacity`, and the chosen item
/// indices in increasing order.
pub fn knapsack_01(items: &[(u64, u64)], capacity: u64) -> (u64, Vec<usize>) {
    let cap = capacity as usize;
    let m = items.len();
    // best[i][c]: best value using the first i items within capacity c
    let mut best = vec![vec![0u64; cap + 1]; m + 1];
    for (i, &(w, v)) in items.iter().enumerate() {
        for c in 0..=cap {
            let skip = best[i][c];
            let take = if (w as usize) <= c {
                best[i][c - w as usize] + v
            } else {
                0
            };
            best[i + 1][c] = if (w as usize) <= c && take > skip { take } else { skip };
        }
    }
    let mut chosen = Vec::new();
    let mut c = cap;
    for i in (0..m).rev() {
        if best[i + 1][c] != best[i][c] {
            chosen.push(i);
            c -= items[i].0 as usize;
        }
    }
    chosen.reverse();
    (best[m][cap], chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_forced() {
        assert_eq!(knapsack_01(&[], 7), (0, vec![]));
        assert_eq!(knapsack_01(&[(2, 2), (3, 3)], 4), (3, vec![1]));
        assert_eq!(knapsack_01(&[(0, 4), (5, 1)], 0), (4, vec![0]));
    }
}

//! Square assignment problem (Hungarian method with potentials, O(d³)).

/// Permutation `sigma` maximizing `Σ w[i][sigma[i]]` over a square table.
pub(crate) fn max_weight_assignment(w: &[Vec<i128>]) -> Vec<usize> {
    let d = w.len();
    if d == 0 {
        return Vec::new();
    }
    // minimize cost = -w; rows and columns are 1-based, column 0 is virtual
    let cost = |i: usize, j: usize| -w[i - 1][j - 1];
    let inf = i128::MAX / 4;
    let mut u = vec![0i128; d + 1];
    let mut v = vec![0i128; d + 1];
    let mut p = vec![0usize; d + 1];
    let mut way = vec![0usize; d + 1];
    for i in 1..=d {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; d + 1];
        let mut used = vec![false; d + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=d {
                if !used[j] {
                    let cur = cost(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=d {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut sigma = vec![0; d];
    for j in 1..=d {
        sigma[p[j] - 1] = j - 1;
    }
    sigma
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_the_heavy_antidiagonal() {
        let w = vec![vec![1, 2, 9], vec![1, 9, 2], vec![9, 1, 1]];
        assert_eq!(max_weight_assignment(&w), vec![2, 1, 0]);
    }

    #[test]
    fn negative_entries() {
        let w = vec![vec![-5, -1], vec![-1, -7]];
        assert_eq!(max_weight_assignment(&w), vec![1, 0]);
    }
}

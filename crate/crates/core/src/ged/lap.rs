//! Rectangular linear assignment (Hungarian method with potentials).

/// Assigns every row to a distinct column minimizing total cost; requires
/// `rows <= cols`. Returns the column chosen for each row. Ties go to the
/// lowest column index.
pub(crate) fn assign(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    let m = cost[0].len();
    assert!(n <= m, "more rows than columns");
    const INF: i64 = i64::MAX / 4;
    // 1-based arrays; p[j] is the row matched to column j.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
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
    let mut out = vec![0; n];
    for j in 1..=m {
        if p[j] != 0 {
            out[p[j] - 1] = j - 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(cost: &[Vec<i64>]) -> i64 {
        fn go(cost: &[Vec<i64>], row: usize, used: &mut Vec<bool>) -> i64 {
            if row == cost.len() {
                return 0;
            }
            let mut best = i64::MAX;
            for j in 0..used.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.min(cost[row][j] + go(cost, row + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        go(cost, 0, &mut vec![false; cost[0].len()])
    }

    #[test]
    fn small_square() {
        let c = vec![vec![4, 1, 3], vec![2, 0, 5], vec![3, 2, 2]];
        let a = assign(&c);
        assert_eq!(a.iter().enumerate().map(|(i, &j)| c[i][j]).sum::<i64>(), 5);
    }

    #[test]
    fn ties_prefer_low_columns() {
        let c = vec![vec![0, 0, 0], vec![0, 0, 0]];
        assert_eq!(assign(&c), vec![0, 1]);
    }

    proptest! {
        #[test]
        fn optimal_on_small_matrices(
            rows in 1usize..=5,
            extra in 0usize..=2,
            vals in proptest::collection::vec(0i64..20, 35),
        ) {
            let cols = rows + extra;
            let c: Vec<Vec<i64>> = (0..rows).map(|i| vals[i * cols..(i + 1) * cols].to_vec()).collect();
            let a = assign(&c);
            let mut seen = a.clone();
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), rows);
            prop_assert_eq!(a.iter().enumerate().map(|(i, &j)| c[i][j]).sum::<i64>(), brute(&c));
        }
    }
}

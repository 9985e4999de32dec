/// Minimum-cost perfect matching on a square cost matrix by successive
/// shortest augmenting paths with vertex potentials.
///
/// Returns `(total, assignment)` with `assignment[row] = column`. Runs in
/// `O(k³)`.
pub fn min_cost_assignment(cost: &[Vec<i64>]) -> (i64, Vec<usize>) {
    let k = cost.len();
    debug_assert!(cost.iter().all(|row| row.len() == k));
    if k == 0 {
        return (0, Vec::new());
    }
    // 1-based; column 0 is the virtual source of each augmentation
    let mut row_pot = vec![0i64; k + 1];
    let mut col_pot = vec![0i64; k + 1];
    let mut col_row = vec![0usize; k + 1];
    let mut prev_col = vec![0usize; k + 1];

    for row in 1..=k {
        col_row[0] = row;
        let mut col = 0;
        let mut slack = vec![i64::MAX; k + 1];
        let mut used = vec![false; k + 1];
        loop {
            used[col] = true;
            let r = col_row[col];
            let mut delta = i64::MAX;
            let mut next = 0;
            for j in 1..=k {
                if used[j] {
                    continue;
                }
                let reduced = cost[r - 1][j - 1] - row_pot[r] - col_pot[j];
                if reduced < slack[j] {
                    slack[j] = reduced;
                    prev_col[j] = col;
                }
                if slack[j] < delta {
                    delta = slack[j];
                    next = j;
                }
            }
            for j in 0..=k {
                if used[j] {
                    row_pot[col_row[j]] += delta;
                    col_pot[j] -= delta;
                } else {
                    slack[j] -= delta;
                }
            }
            col = next;
            if col_row[col] == 0 {
                break;
            }
        }
        while col != 0 {
            let p = prev_col[col];
            col_row[col] = col_row[p];
            col = p;
        }
    }

    let mut assignment = vec![0; k];
    for j in 1..=k {
        assignment[col_row[j] - 1] = j - 1;
    }
    let total = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| cost[i][j])
        .sum();
    (total, assignment)
}

//! Littlewood–Richardson coefficients by direct enumeration of LR tableaux.
//!
//! `c^ν_{λμ}` counts semistandard fillings of `ν/λ` with content `μ` whose
//! reverse reading word is a lattice word. The skew shape is filled row by
//! row; in row `r` only letters `0..=r` may occur.

use std::collections::BTreeMap;

/// All `ν` with at most `max_rows` rows (and first part at most `max_cols`,
/// when given) together with `c^ν_{λμ}`.
pub fn lr_product(
    lambda: &[u32],
    mu: &[u32],
    max_rows: usize,
    max_cols: Option<u32>,
) -> BTreeMap<Vec<u32>, u64> {
    let mut out = BTreeMap::new();
    let lam: Vec<u32> = trim(lambda);
    let mu: Vec<u32> = trim(mu);
    if lam.len() > max_rows || mu.len() > max_rows {
        return out;
    }
    if let Some(c) = max_cols {
        if lam.first().copied().unwrap_or(0) > c || mu.first().copied().unwrap_or(0) > c {
            return out;
        }
    }
    let mut lam_padded = lam.clone();
    lam_padded.resize(max_rows, 0);
    let mut state = Filling {
        lambda: lam_padded,
        mu,
        max_cols,
        nu: Vec::with_capacity(max_rows),
        rows: Vec::with_capacity(max_rows),
        used: Vec::new(),
    };
    state.used = vec![0; state.mu.len()];
    state.fill_row(0, &mut out);
    out
}

fn trim(p: &[u32]) -> Vec<u32> {
    let mut v = p.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

struct Filling {
    lambda: Vec<u32>,
    mu: Vec<u32>,
    max_cols: Option<u32>,
    nu: Vec<u32>,
    // Labels of the skew boxes in each completed row, left to right.
    rows: Vec<Vec<u32>>,
    used: Vec<u32>,
}

impl Filling {
    fn fill_row(&mut self, r: usize, out: &mut BTreeMap<Vec<u32>, u64>) {
        if r == self.lambda.len() {
            if self.used == self.mu {
                let nu = trim(&self.nu);
                *out.entry(nu).or_insert(0) += 1;
            }
            return;
        }
        // Letters still to place must fit in the remaining rows; letter j
        // can only sit in rows >= j.
        let letters = self.mu.len().min(r + 1);
        let mut counts = vec![0u32; letters];
        self.choose(r, 0, &mut counts, out);
    }

    fn choose(
        &mut self,
        r: usize,
        j: usize,
        counts: &mut Vec<u32>,
        out: &mut BTreeMap<Vec<u32>, u64>,
    ) {
        if j == counts.len() {
            self.place_row(r, counts, out);
            return;
        }
        let remaining = self.mu[j] - self.used[j];
        // Lattice condition: after reading this row right to left, the count
        // of letter j may not exceed the count of j-1 from earlier rows.
        let lattice_cap = if j == 0 {
            remaining
        } else {
            let prev = self.used[j - 1];
            prev.saturating_sub(self.used[j]).min(remaining)
        };
        for c in 0..=lattice_cap {
            counts[j] = c;
            self.choose(r, j + 1, counts, out);
        }
        counts[j] = 0;
    }

    fn place_row(&mut self, r: usize, counts: &[u32], out: &mut BTreeMap<Vec<u32>, u64>) {
        let added: u32 = counts.iter().sum();
        let len = self.lambda[r] + added;
        if r > 0 && len > self.nu[r - 1] {
            return;
        }
        if let Some(c) = self.max_cols {
            if len > c {
                return;
            }
        }
        let mut labels = Vec::with_capacity(added as usize);
        for (letter, &c) in counts.iter().enumerate() {
            labels.extend(std::iter::repeat_n(letter as u32, c as usize));
        }
        // Column strictness against the skew boxes of the row above.
        if r > 0 {
            let above_start = self.lambda[r - 1];
            for (offset, &label) in labels.iter().enumerate() {
                let col = self.lambda[r] + offset as u32;
                if col >= above_start {
                    let above = self.rows[r - 1][(col - above_start) as usize];
                    if label <= above {
                        return;
                    }
                }
            }
        }
        for (letter, &c) in counts.iter().enumerate() {
            self.used[letter] += c;
        }
        self.nu.push(len);
        self.rows.push(labels);
        self.fill_row(r + 1, out);
        self.rows.pop();
        self.nu.pop();
        for (letter, &c) in counts.iter().enumerate() {
            self.used[letter] -= c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lr(l: &[u32], m: &[u32], rows: usize) -> Vec<(Vec<u32>, u64)> {
        lr_product(l, m, rows, None).into_iter().collect()
    }

    #[test]
    fn pieri_box_times_box() {
        assert_eq!(lr(&[1], &[1], 2), vec![(vec![1, 1], 1), (vec![2], 1)]);
        assert_eq!(lr(&[1], &[1], 1), vec![(vec![2], 1)]);
    }

    #[test]
    fn classic_coefficient() {
        // s_{21} * s_{21} contains s_{321} with coefficient 2.
        let p = lr_product(&[2, 1], &[2, 1], 3, None);
        assert_eq!(p[&vec![3, 2, 1]], 2);
        assert_eq!(p[&vec![4, 2]], 1);
        // s_{3111} and s_{2211} need four rows.
        assert_eq!(p.values().sum::<u64>(), 6);
        assert_eq!(lr_product(&[2, 1], &[2, 1], 4, None).values().sum::<u64>(), 8);
    }

    #[test]
    fn column_bound_truncates() {
        let p = lr_product(&[4], &[1], 2, Some(4));
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(vec![4, 1], 1)]);
    }
}

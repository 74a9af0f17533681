//! Average ranks, the Friedman statistic and the Nemenyi critical difference.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    HigherBetter,
    LowerBetter,
}

/// Ranks one row of scores, 1 for the best. Tied scores share the mean of
/// the positions they span.
pub fn rank_row(scores: &[f64], direction: Direction) -> Result<Vec<f64>> {
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::Config("cannot rank NaN scores".into()));
    }
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| {
        let ord = scores[a].total_cmp(&scores[b]);
        match direction {
            Direction::LowerBetter => ord,
            Direction::HigherBetter => ord.reverse(),
        }
    });
    let mut ranks = vec![0.0; scores.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && scores[idx[end]] == scores[idx[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let shared = (start + 1 + end) as f64 / 2.0;
        for &k in &idx[start..end] {
            ranks[k] = shared;
        }
        start = end;
    }
    Ok(ranks)
}

/// Per-case ranks of `k` methods, one row per case.
#[derive(Clone, Debug, PartialEq)]
pub struct RankMatrix {
    rows: Vec<Vec<f64>>,
    k: usize,
}

impl RankMatrix {
    pub fn new(k: usize) -> Self {
        RankMatrix { rows: Vec::new(), k }
    }

    pub fn from_scores(rows: &[Vec<f64>], direction: Direction) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        let mut m = RankMatrix::new(k);
        for r in rows {
            m.push_scores(r, direction)?;
        }
        Ok(m)
    }

    pub fn from_ranks(rows: Vec<Vec<f64>>) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != k) {
            return Err(Error::Dimension { expected: k, found: bad.len() });
        }
        Ok(RankMatrix { rows, k })
    }

    pub fn push_scores(&mut self, scores: &[f64], direction: Direction) -> Result<()> {
        if scores.len() != self.k {
            return Err(Error::Dimension {
                expected: self.k,
                found: scores.len(),
            });
        }
        self.rows.push(rank_row(scores, direction)?);
        Ok(())
    }

    pub fn cases(&self) -> usize {
        self.rows.len()
    }

    pub fn methods(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Column means.
    pub fn average_ranks(&self) -> Result<Vec<f64>> {
        if self.rows.is_empty() {
            return Err(Error::EmptySet);
        }
        let n = self.rows.len() as f64;
        Ok((0..self.k)
            .map(|j| self.rows.iter().map(|r| r[j]).sum::<f64>() / n)
            .collect())
    }

    /// `12N / (k(k+1)) * (Σ R_j² - k(k+1)²/4)` over the average ranks `R_j`.
    pub fn friedman_statistic(&self) -> Result<f64> {
        if self.rows.len() < 2 || self.k < 2 {
            return Err(Error::Config(format!(
                "friedman test needs at least 2 cases and 2 methods, got {} and {}",
                self.rows.len(),
                self.k
            )));
        }
        let avg = self.average_ranks()?;
        let n = self.rows.len() as f64;
        let k = self.k as f64;
        let sum_sq: f64 = avg.iter().map(|r| r * r).sum();
        Ok(12.0 * n / (k * (k + 1.0)) * (sum_sq - k * (k + 1.0).powi(2) / 4.0))
    }
}

/// Average ranks of several groups of cases, each over the same `k` methods,
/// plus the mean over every case of every group.
pub fn average_ranks(groups: &[RankMatrix]) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let per_group = groups.iter().map(RankMatrix::average_ranks).collect::<Result<Vec<_>>>()?;
    let k = groups.first().ok_or(Error::EmptySet)?.methods();
    let mut all = RankMatrix::new(k);
    for g in groups {
        if g.methods() != k {
            return Err(Error::Dimension { expected: k, found: g.methods() });
        }
        all.rows.extend(g.rows.iter().cloned());
    }
    let overall = all.average_ranks()?;
    Ok((per_group, overall))
}

/// Two-tailed Studentized-range quantiles over sqrt(2) at alpha 0.05, for
/// k = 2..=10.
const Q_05: [f64; 9] = [1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164];

/// `q_0.05 * sqrt(k(k+1) / 6N)`.
pub fn nemenyi_critical_difference(k: usize, n: usize) -> Result<f64> {
    if !(2..=10).contains(&k) {
        return Err(Error::Config(format!("nemenyi table covers 2..=10 methods, got {k}")));
    }
    if n == 0 {
        return Err(Error::EmptySet);
    }
    let q = Q_05[k - 2];
    Ok(q * ((k * (k + 1)) as f64 / (6.0 * n as f64)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank_row(&[0.5, 0.7, 0.6], Direction::HigherBetter).unwrap(), vec![3.0, 1.0, 2.0]);
        assert_eq!(rank_row(&[1.0, 1.0, 2.0], Direction::LowerBetter).unwrap(), vec![1.5, 1.5, 3.0]);
        assert_eq!(rank_row(&[4.0, 4.0, 4.0], Direction::LowerBetter).unwrap(), vec![2.0; 3]);
        assert!(rank_row(&[1.0, f64::NAN], Direction::LowerBetter).is_err());
    }

    #[test]
    fn friedman_identical_rows() {
        // every case ranks the methods the same way
        for (k, n) in [(2usize, 3usize), (5, 9), (4, 20)] {
            let row: Vec<f64> = (0..k).map(|j| j as f64).collect();
            let m = RankMatrix::from_scores(&vec![row; n], Direction::LowerBetter).unwrap();
            let chi = m.friedman_statistic().unwrap();
            assert!((chi - (n * (k - 1)) as f64).abs() < 1e-9, "{chi}");
        }
        let tied = RankMatrix::from_scores(&vec![vec![1.0; 4]; 5], Direction::LowerBetter).unwrap();
        assert!(tied.friedman_statistic().unwrap().abs() < 1e-12);
        let one = RankMatrix::from_scores(&[vec![1.0, 2.0]], Direction::LowerBetter).unwrap();
        assert!(one.friedman_statistic().is_err());
    }

    #[test]
    fn critical_difference() {
        let cd = nemenyi_critical_difference(5, 27).unwrap();
        assert!((cd - 2.728 * (30.0f64 / 162.0).sqrt()).abs() < 1e-12);
        assert!((nemenyi_critical_difference(2, 1).unwrap() - 1.960).abs() < 1e-12);
        assert!(nemenyi_critical_difference(11, 5).is_err());
        assert!(nemenyi_critical_difference(3, 0).is_err());
    }

    #[test]
    fn overall_is_mean_over_cases() {
        let a = RankMatrix::from_ranks(vec![vec![1.0, 2.0], vec![1.0, 2.0]]).unwrap();
        let b = RankMatrix::from_ranks(vec![vec![2.0, 1.0]]).unwrap();
        let (groups, overall) = average_ranks(&[a, b]).unwrap();
        assert_eq!(groups, vec![vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!((overall[0] - 4.0 / 3.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn ranks_sum_to_triangular(scores in prop::collection::vec(0u8..5, 1..9)) {
            let s: Vec<f64> = scores.iter().map(|&x| x as f64).collect();
            let r = rank_row(&s, Direction::LowerBetter).unwrap();
            let k = s.len() as f64;
            prop_assert!((r.iter().sum::<f64>() - k * (k + 1.0) / 2.0).abs() < 1e-9);
            let hi = rank_row(&s, Direction::HigherBetter).unwrap();
            for (a, b) in r.iter().zip(&hi) {
                prop_assert!((a + b - (k + 1.0)).abs() < 1e-9);
            }
        }

        #[test]
        fn friedman_is_nonnegative(rows in prop::collection::vec(prop::collection::vec(0u8..4, 4), 2..10)) {
            let rows: Vec<Vec<f64>> = rows.into_iter().map(|r| r.into_iter().map(f64::from).collect()).collect();
            let m = RankMatrix::from_scores(&rows, Direction::LowerBetter).unwrap();
            prop_assert!(m.friedman_statistic().unwrap() >= -1e-9);
        }
    }
}

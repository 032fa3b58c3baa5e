//! Pairwise-distance set functions that look like diversity measures but are not
//! monotone submodular. Exact rational evaluators, kept for counterexample tests.
//!
//! Profiles are plain tuples of optional symbols. The Hamming-sum family compares
//! cells with ordinary equality (two missing cells are equal); the Jaccard family
//! never matches a missing cell.

use num_rational::Ratio;

pub type Q = Ratio<i64>;

/// A categorical tuple; `None` is a missing value.
pub type Tuple<'a> = [Option<&'a str>];

fn q(n: usize) -> Q {
    Q::from_integer(n as i64)
}

/// `(1/|S|) Σ_{u,v ∈ S} 1[val(u) ≠ val(v)]` over unordered pairs of a single attribute.
pub fn f1(values: &[Option<&str>]) -> Q {
    if values.is_empty() {
        return q(0);
    }
    let mut mismatches = 0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] != values[j] {
                mismatches += 1;
            }
        }
    }
    Q::new(mismatches, values.len() as i64)
}

fn plain_hamming(u: &Tuple, v: &Tuple) -> usize {
    u.iter().zip(v).filter(|(a, b)| a != b).count()
}

/// `Σ_{u ≠ v ∈ S} dist^H(u, v)` over ordered pairs.
pub fn f2(set: &[&Tuple]) -> Q {
    let mut total = 0;
    for (i, u) in set.iter().enumerate() {
        for (j, v) in set.iter().enumerate() {
            if i != j {
                total += plain_hamming(u, v);
            }
        }
    }
    q(total)
}

/// `f2(S) / (2|S|)`.
pub fn f2_hat(set: &[&Tuple]) -> Q {
    if set.is_empty() {
        return q(0);
    }
    f2(set) / q(2 * set.len())
}

/// `f2(S) / (|S|(|S|−1))`.
pub fn f2_hat_hat(set: &[&Tuple]) -> Q {
    if set.len() < 2 {
        return q(0);
    }
    f2(set) / q(set.len() * (set.len() - 1))
}

fn jaccard_distance(u: &Tuple, v: &Tuple) -> Q {
    let matches = u
        .iter()
        .zip(v)
        .filter(|(a, b)| matches!((a, b), (Some(x), Some(y)) if x == y))
        .count();
    let len_u = u.iter().flatten().count();
    let len_v = v.iter().flatten().count();
    let union = len_u + len_v - matches;
    if union == 0 {
        return q(0);
    }
    q(1) - Q::new(matches as i64, union as i64)
}

/// `Σ_{u ≠ v ∈ S} dist^J(u, v)` over ordered pairs.
pub fn f3(set: &[&Tuple]) -> Q {
    let mut total = q(0);
    for (i, u) in set.iter().enumerate() {
        for (j, v) in set.iter().enumerate() {
            if i != j {
                total += jaccard_distance(u, v);
            }
        }
    }
    total
}

/// `f3(S) / (2|S|)`.
pub fn f3_hat(set: &[&Tuple]) -> Q {
    if set.is_empty() {
        return q(0);
    }
    f3(set) / q(2 * set.len())
}

/// Set-level Jaccard: `1 − #{attributes where all of S agree} / Σ_j |values of A_j in S|`.
pub fn f4(set: &[&Tuple]) -> Q {
    let Some(first) = set.first() else {
        return q(0);
    };
    let m = first.len();
    let mut agree = 0;
    let mut distinct = 0;
    for j in 0..m {
        let mut values: Vec<&str> = set.iter().filter_map(|t| t[j]).collect();
        if set.iter().all(|t| t[j].is_some() && t[j] == first[j]) {
            agree += 1;
        }
        values.sort_unstable();
        values.dedup();
        distinct += values.len();
    }
    if distinct == 0 {
        return q(0);
    }
    q(1) - Q::new(agree, distinct as i64)
}

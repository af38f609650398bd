use std::cmp::Ordering;

/// All increasing `h`-subsets of `0..m` in lexicographic order.
pub(crate) fn combinations(m: usize, h: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if h > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..h).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..h).rev().find(|&i| idx[i] != i + m - h) else { break };
        idx[i] += 1;
        for j in i + 1..h {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Permutations of `0..h` paired with their signs.
pub(crate) fn signed_permutations(h: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..h).collect();
    loop {
        out.push((p.clone(), permutation_sign(&p)));
        let Some(i) = (1..h).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..h).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

pub(crate) fn permutation_sign(p: &[usize]) -> i8 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn binomial(m: usize, h: usize) -> usize {
    if h > m {
        return 0;
    }
    let h = h.min(m - h);
    (0..h).fold(1usize, |acc, i| acc * (m - i) / (i + 1))
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

pub(crate) fn sign_of(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Determinant of a small square matrix given by rows.
pub(crate) fn det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    match n {
        0 => 1.0,
        1 => rows[0][0],
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        3 => {
            let r = rows;
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        }
        _ => nalgebra::DMatrix::from_fn(n, n, |i, j| rows[i][j]).determinant(),
    }
}

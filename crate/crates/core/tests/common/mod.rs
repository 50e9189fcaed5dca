#![allow(dead_code)]

pub mod catalog_checks;

use bolkit::LoopTable;
use rand::seq::SliceRandom;
use rand::Rng;

/// Every latin square of order `n` whose first row and column are `0..n`.
pub fn all_normalized_latin_squares(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn fill(
        n: usize,
        cell: usize,
        sq: &mut Vec<Vec<usize>>,
        rows: &mut [Vec<bool>],
        cols: &mut [Vec<bool>],
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if cell == n * n {
            out.push(sq.clone());
            return;
        }
        let (r, c) = (cell / n, cell % n);
        if r == 0 || c == 0 {
            return fill(n, cell + 1, sq, rows, cols, out);
        }
        for v in 0..n {
            if !rows[r][v] && !cols[c][v] {
                rows[r][v] = true;
                cols[c][v] = true;
                sq[r][c] = v;
                fill(n, cell + 1, sq, rows, cols, out);
                rows[r][v] = false;
                cols[c][v] = false;
            }
        }
    }
    let mut sq = vec![vec![0; n]; n];
    let mut rows = vec![vec![false; n]; n];
    let mut cols = vec![vec![false; n]; n];
    for i in 0..n {
        sq[0][i] = i;
        sq[i][0] = i;
        rows[0][i] = true;
        rows[i][i] = true;
        cols[i][i] = true;
        cols[0][i] = true;
    }
    let mut out = Vec::new();
    fill(n, 0, &mut sq, &mut rows, &mut cols, &mut out);
    out
}

/// Steps through the permutations of a slice in lexicographic order.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Calls `f` with every bijection of `0..n` fixing `0`.
pub fn for_each_pointed_bijection(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        f(&p);
        if n < 2 || !next_permutation(&mut p[1..]) {
            break;
        }
    }
}

/// The lexicographically smallest table among all relabelings.
pub fn naive_canonical_form(rows: &[Vec<usize>]) -> Vec<usize> {
    let n = rows.len();
    let mut best: Option<Vec<usize>> = None;
    for_each_pointed_bijection(n, |phi| {
        let mut inv = vec![0; n];
        for (x, &y) in phi.iter().enumerate() {
            inv[y] = x;
        }
        // relabelled table: phi(x) * phi(y) = phi(xy)
        let t: Vec<usize> = (0..n * n)
            .map(|k| phi[rows[inv[k / n]][inv[k % n]]])
            .collect();
        if best.as_ref().map_or(true, |b| t < *b) {
            best = Some(t);
        }
    });
    best.unwrap()
}

/// Tries every bijection fixing the identity.
pub fn naive_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    let mut found = false;
    for_each_pointed_bijection(n, |phi| {
        if !found {
            found = (0..n).all(|x| (0..n).all(|y| phi[a[x][y]] == b[phi[x]][phi[y]]));
        }
    });
    found
}

/// `((xy)z)y = x((yz)y)` checked over all triples of a raw table.
pub fn naive_right_bol(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[t[x][y]][z]][y] == t[x][t[t[y][z]][y]])))
}

/// A random latin square with identity row and column, by randomized
/// backtracking.
pub fn random_latin_square(n: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    fn fill(n: usize, cell: usize, sq: &mut Vec<Vec<usize>>, rng: &mut impl Rng) -> bool {
        if cell == n * n {
            return true;
        }
        let (r, c) = (cell / n, cell % n);
        if r == 0 || c == 0 {
            return fill(n, cell + 1, sq, rng);
        }
        let mut vals: Vec<usize> = (0..n)
            .filter(|&v| (0..c).all(|j| sq[r][j] != v) && (0..r).all(|i| sq[i][c] != v))
            .collect();
        vals.shuffle(rng);
        for v in vals {
            sq[r][c] = v;
            if fill(n, cell + 1, sq, rng) {
                return true;
            }
        }
        sq[r][c] = usize::MAX;
        false
    }
    let mut sq = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        sq[0][i] = i;
        sq[i][0] = i;
    }
    assert!(fill(n, 0, &mut sq, rng));
    sq
}

/// A random relabeling of `q` fixing the identity.
pub fn random_relabel(q: &LoopTable, rng: &mut impl Rng) -> LoopTable {
    let n = q.order();
    let mut tail: Vec<usize> = (1..n).collect();
    tail.shuffle(rng);
    let mut perm = vec![0];
    perm.extend(tail);
    q.relabel(&perm).expect("bijection")
}

/// Published Table 1 values for B1..B10, in row order.
pub const TABLE1_NUMERIC: [(&str, [u128; 10]); 11] = [
    ("|Z(Q)|", [3, 3, 3, 3, 3, 3, 3, 3, 1, 1]),
    ("exp Q", [9, 9, 9, 9, 9, 9, 9, 9, 3, 3]),
    ("#{x : |x| = 3}", [2, 14, 8, 2, 20, 14, 8, 2, 26, 26]),
    ("|Q'|", [3, 3, 3, 3, 3, 3, 3, 3, 9, 9]),
    ("|Nl(Q)|", [9, 9, 9, 9, 9, 9, 9, 9, 9, 9]),
    ("exp Nl(Q)", [9, 3, 9, 9, 9, 3, 9, 9, 3, 3]),
    ("#{(x,y) : xy = yx}", [459, 459, 459, 459, 405, 405, 405, 405, 153, 153]),
    ("|RMlt(Q)|", [81, 81, 81, 81, 81, 81, 81, 81, 243, 243]),
    ("|LMlt(Q)|", [243, 243, 243, 243, 243, 243, 243, 243, 139968, 139968]),
    ("|Mlt(Q)|", [2187, 2187, 2187, 2187, 2187, 2187, 2187, 2187, 139968, 139968]),
    ("|Aut(Q)|", [54, 18, 18, 27, 108, 36, 36, 54, 72, 144]),
];

pub const TABLE1_BRUCK: [bool; 10] = [false, false, false, false, true, true, true, true, false, false];

pub const TABLE1_ASSOCIATED: [&str; 10] = ["B5", "B6", "B7", "B8", "B5", "B6", "B7", "B8", "Z3^3", "Z3^3"];

//! Explicit loop constructions: cyclic groups, direct products, central
//! extensions, and the block constructions behind the ten nonassociative
//! right Bol loops `B1..B10` of order 27.
//!
//! Element encodings:
//! * `Q(x, y, r)`: the pair `(u, i)` in `Z3 x Z9` is `9u + i`;
//! * `Q(M)` and `Q(M, N)`: row/column index in `0..27` directly;
//! * central extensions of `Z_p` by `F`: `(a, x)` is `a * |F| + x`.

use crate::error::{Error, Result};
use crate::table::LoopTable;

/// A 9x9 matrix over `Z9`.
pub type Matrix9 = [[u8; 9]; 9];

/// A 3x3 matrix over `Z9`.
pub type Block3 = [[u8; 3]; 3];

/// A 9x9 matrix over `Z9` read as a 3x3 array of 3x3 blocks, each block
/// containing every element of `Z9`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockMatrix9(Matrix9);

impl BlockMatrix9 {
    pub fn new(m: Matrix9) -> Result<Self> {
        let bm = BlockMatrix9(m);
        for u in 0..3 {
            for v in 0..3 {
                check_block(&bm.block(u, v))?;
            }
        }
        Ok(bm)
    }

    /// Every block equal to the standard matrix `[[0,1,2],[3,4,5],[6,7,8]]`.
    pub fn standard() -> Self {
        let mut m = [[0u8; 9]; 9];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (3 * (i % 3) + j % 3) as u8;
            }
        }
        BlockMatrix9(m)
    }

    pub fn block(&self, u: usize, v: usize) -> Block3 {
        let mut b = [[0u8; 3]; 3];
        for (r, row) in b.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = self.0[3 * u + r][3 * v + c];
            }
        }
        b
    }

    pub fn matrix(&self) -> &Matrix9 {
        &self.0
    }
}

fn check_block(k: &Block3) -> Result<()> {
    let mut seen = [false; 9];
    for &v in k.iter().flatten() {
        if v >= 9 || seen[v as usize] {
            return Err(Error::BadK);
        }
        seen[v as usize] = true;
    }
    Ok(())
}

/// Successor of `v` inside its triple `{0,1,2}`, `{3,4,5}` or `{6,7,8}`.
fn triple_next(v: u8) -> u8 {
    3 * (v / 3) + (v % 3 + 1) % 3
}

/// The 3x3 matrix `T(k, K)`: the top row is the row of `K` containing `k`,
/// rotated to start at `k`, and each column cycles through the triple of its
/// top entry.
pub fn t_block(k: u8, big_k: &Block3) -> Result<Block3> {
    check_block(big_k)?;
    if k >= 9 {
        return Err(Error::BadK);
    }
    let row = big_k
        .iter()
        .find(|r| r.contains(&k))
        .expect("K contains every element of Z9");
    let shift = row.iter().position(|&v| v == k).unwrap();
    let mut out = [[0u8; 3]; 3];
    for c in 0..3 {
        let mut v = row[(shift + c) % 3];
        for r in out.iter_mut() {
            r[c] = v;
            v = triple_next(v);
        }
    }
    Ok(out)
}

/// The 27x27 matrix `T(M, N)` whose block `(i, j)` is `T(M[i][j], N_{i/3, j/3})`.
pub fn t_assemble(m: &Matrix9, n: &BlockMatrix9) -> Result<Vec<Vec<u8>>> {
    let mut out = vec![vec![0u8; 27]; 27];
    for i in 0..9 {
        for j in 0..9 {
            let block = t_block(m[i][j], &n.block(i / 3, j / 3))?;
            for r in 0..3 {
                for c in 0..3 {
                    out[3 * i + r][3 * j + c] = block[r][c];
                }
            }
        }
    }
    Ok(out)
}

/// The loop `Q(M)`, i.e. `Q(M, N)` with every block of `N` standard.
pub fn loop_qm(m: &Matrix9) -> Result<LoopTable> {
    loop_qmn(m, &BlockMatrix9::standard())
}

/// The loop `Q(M, N)`: `T(M, N)` plus `9 ((i/9 + j/9) mod 3)` at cell `(i, j)`.
pub fn loop_qmn(m: &Matrix9, n: &BlockMatrix9) -> Result<LoopTable> {
    let t = t_assemble(m, n)?;
    LoopTable::from_fn(27, |i, j| t[i][j] as usize + 9 * ((i / 9 + j / 9) % 3))
        .map_err(|e| Error::NotALoop(e.to_string()))
}

fn inv_mod9(x: u8) -> Result<u8> {
    (1..9u8)
        .find(|&y| (x as u32 * y as u32) % 9 == 1)
        .ok_or(Error::NotAUnit(x))
}

/// The loop `Q(x, y, r)` on `Z3 x Z9` with
/// `(u,i)(v,j) = (u+v, i + f(u,v) j + r floor((u+v)/3))`.
pub fn loop_qxyr(x: u8, y: u8, r: u8) -> Result<LoopTable> {
    let xi = inv_mod9(x % 9)?;
    let yi = inv_mod9(y % 9)?;
    let (x, y, r) = (x as usize % 9, y as usize % 9, r as usize % 9);
    let (xi, yi) = (xi as usize, yi as usize);
    let f = [
        [1, 1, 1],
        [x, yi, (y * xi) % 9],
        [y, (x * yi) % 9, xi],
    ];
    LoopTable::from_fn(27, |a, b| {
        let (u, i) = (a / 9, a % 9);
        let (v, j) = (b / 9, b % 9);
        let w = (u + v) % 3;
        let k = (i + f[u][v] * j + r * ((u + v) / 3)) % 9;
        9 * w + k
    })
    .map_err(|e| Error::NotALoop(e.to_string()))
}

/// A normalized loop cocycle `F x F -> Z_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocycle {
    factor_order: usize,
    p: usize,
    table: Vec<u8>,
}

impl Cocycle {
    pub fn new(factor_order: usize, p: usize, table: Vec<u8>) -> Result<Self> {
        if table.len() != factor_order * factor_order {
            return Err(Error::DimensionMismatch(format!(
                "cocycle table has {} entries, expected {}",
                table.len(),
                factor_order * factor_order
            )));
        }
        if table.iter().any(|&v| v as usize >= p) {
            return Err(Error::DimensionMismatch(format!("entry outside Z_{p}")));
        }
        let c = Cocycle {
            factor_order,
            p,
            table,
        };
        if (0..factor_order).any(|x| c.get(0, x) != 0 || c.get(x, 0) != 0) {
            return Err(Error::NotNormalized);
        }
        Ok(c)
    }

    pub fn from_fn(factor_order: usize, p: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(factor_order * factor_order);
        for x in 0..factor_order {
            for y in 0..factor_order {
                table.push((f(x, y) % p) as u8);
            }
        }
        Self::new(factor_order, p, table)
    }

    pub fn zero(factor_order: usize, p: usize) -> Self {
        Cocycle {
            factor_order,
            p,
            table: vec![0; factor_order * factor_order],
        }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.factor_order + y] as usize
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn factor_order(&self) -> usize {
        self.factor_order
    }
}

/// `(a, x)(b, y) = (a + b + theta(x, y), xy)` on `Z_p x F`.
pub fn central_extension(p: usize, factor: &LoopTable, theta: &Cocycle) -> Result<LoopTable> {
    let m = factor.order();
    if theta.factor_order != m || theta.p != p {
        return Err(Error::DimensionMismatch(format!(
            "cocycle is {}x{} over Z_{}, factor has order {m} and p = {p}",
            theta.factor_order, theta.factor_order, theta.p
        )));
    }
    if (0..m).any(|x| theta.get(0, x) != 0 || theta.get(x, 0) != 0) {
        return Err(Error::NotNormalized);
    }
    LoopTable::from_fn(p * m, |u, v| {
        let (a, x) = (u / m, u % m);
        let (b, y) = (v / m, v % m);
        ((a + b + theta.get(x, y)) % p) * m + factor.mul(x, y)
    })
}

/// Recovers the cocycle of a loop whose elements `a * m + x` (`a < p`) are
/// laid out as a central extension of `Z_p` by the factor on `0..m`.
pub fn extract_cocycle(q: &LoopTable, p: usize) -> Result<(LoopTable, Cocycle)> {
    let n = q.order();
    if n % p != 0 {
        return Err(Error::DimensionMismatch(format!("{p} does not divide {n}")));
    }
    let m = n / p;
    let factor = LoopTable::from_fn(m, |x, y| q.mul(x, y) % m)?;
    let theta = Cocycle::from_fn(m, p, |x, y| q.mul(x, y) / m)?;
    Ok((factor, theta))
}

pub fn cyclic_group(n: usize) -> LoopTable {
    LoopTable::from_fn(n, |x, y| (x + y) % n).expect("cyclic group")
}

/// `C_p x C_p` with `(s, t)` encoded as `s * p + t`.
pub fn elementary_abelian_square(p: usize) -> LoopTable {
    cyclic_group(p).direct_product(&cyclic_group(p))
}

/// Heisenberg group of order 27: `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`,
/// encoded as `9a + 3b + c`.
pub fn heisenberg27() -> LoopTable {
    LoopTable::from_fn(27, |x, y| {
        let (a, b, c) = (x / 9, (x / 3) % 3, x % 3);
        let (d, e, f) = (y / 9, (y / 3) % 3, y % 3);
        9 * ((a + d) % 3) + 3 * ((b + e) % 3) + (c + f + a * e) % 3
    })
    .expect("Heisenberg group")
}

/// `Z9 : Z3` with `(a,b)(c,d) = (a + 4^b c, b + d)`, encoded as `a + 9b`.
pub fn z9_semidirect_z3() -> LoopTable {
    let pow4 = [1, 4, 7];
    LoopTable::from_fn(27, |x, y| {
        let (a, b) = (x % 9, x / 9);
        let (c, d) = (y % 9, y / 9);
        (a + pow4[b] * c) % 9 + 9 * ((b + d) % 3)
    })
    .expect("semidirect product")
}

pub const M2: Matrix9 = [
    [0, 3, 6, 0, 3, 6, 0, 3, 6],
    [3, 6, 0, 3, 6, 0, 6, 1, 5],
    [6, 0, 3, 6, 0, 3, 5, 7, 0],
    [0, 3, 6, 0, 7, 4, 1, 6, 3],
    [3, 6, 0, 6, 3, 2, 4, 0, 6],
    [6, 0, 3, 5, 1, 8, 7, 3, 0],
    [0, 8, 3, 1, 5, 6, 1, 8, 4],
    [3, 0, 8, 8, 0, 4, 8, 3, 2],
    [6, 4, 1, 4, 8, 0, 4, 2, 7],
];

pub const M6: Matrix9 = [
    [0, 3, 6, 0, 3, 6, 0, 3, 6],
    [3, 6, 0, 3, 7, 2, 6, 2, 4],
    [6, 0, 3, 7, 0, 5, 4, 8, 0],
    [0, 4, 6, 0, 8, 4, 1, 6, 4],
    [3, 8, 2, 6, 3, 0, 4, 0, 7],
    [6, 0, 4, 3, 1, 8, 6, 5, 0],
    [0, 7, 3, 1, 4, 6, 1, 8, 3],
    [3, 0, 7, 6, 0, 5, 7, 3, 2],
    [6, 5, 2, 4, 7, 0, 4, 1, 7],
];

pub const M9: Matrix9 = [
    [0, 3, 6, 0, 3, 6, 0, 3, 6],
    [3, 6, 0, 5, 8, 2, 3, 6, 0],
    [6, 0, 3, 7, 1, 4, 6, 0, 3],
    [0, 1, 2, 0, 6, 3, 0, 2, 1],
    [3, 4, 5, 4, 1, 7, 4, 3, 5],
    [6, 7, 8, 8, 5, 2, 8, 7, 6],
    [0, 8, 4, 0, 2, 1, 0, 8, 4],
    [3, 2, 7, 3, 5, 4, 5, 1, 6],
    [6, 5, 1, 6, 8, 7, 7, 3, 2],
];

pub const N9: Matrix9 = [
    [0, 1, 2, 0, 1, 2, 0, 1, 2],
    [3, 4, 5, 3, 4, 5, 3, 4, 5],
    [6, 7, 8, 6, 7, 8, 6, 7, 8],
    [0, 3, 6, 0, 5, 7, 0, 8, 4],
    [1, 4, 7, 1, 3, 8, 1, 6, 5],
    [2, 5, 8, 2, 4, 6, 2, 7, 3],
    [0, 7, 5, 0, 6, 3, 0, 5, 7],
    [1, 8, 3, 1, 7, 4, 1, 3, 8],
    [2, 6, 4, 2, 8, 5, 2, 4, 6],
];

pub const M10: Matrix9 = [
    [0, 3, 6, 0, 3, 6, 0, 3, 6],
    [3, 6, 0, 5, 8, 2, 8, 2, 5],
    [6, 0, 3, 7, 1, 4, 4, 7, 1],
    [0, 1, 2, 0, 4, 8, 0, 2, 1],
    [3, 4, 5, 6, 1, 5, 4, 3, 5],
    [6, 7, 8, 3, 7, 2, 8, 7, 6],
    [0, 3, 6, 0, 2, 1, 0, 4, 8],
    [3, 6, 0, 8, 7, 6, 6, 1, 5],
    [6, 0, 3, 4, 3, 5, 3, 7, 2],
];

pub const N10: Matrix9 = [
    [0, 1, 2, 0, 1, 2, 0, 1, 2],
    [3, 4, 5, 3, 4, 5, 3, 4, 5],
    [6, 7, 8, 6, 7, 8, 6, 7, 8],
    [0, 4, 8, 0, 5, 7, 0, 8, 4],
    [1, 5, 6, 1, 3, 8, 1, 6, 5],
    [2, 3, 7, 2, 4, 6, 2, 7, 3],
    [0, 4, 8, 0, 4, 8, 0, 5, 7],
    [1, 5, 6, 1, 5, 6, 1, 3, 8],
    [2, 3, 7, 2, 3, 7, 2, 4, 6],
];

/// Names accepted by [`catalog_loop`], in catalog order.
pub const CATALOG_NAMES: [&str; 15] = [
    "Z27", "Z9xZ3", "Z3^3", "Heis3", "Z9:Z3", "B1", "B2", "B3", "B4", "B5", "B6", "B7", "B8",
    "B9", "B10",
];

/// Builds the nonassociative right Bol loop `B_i`, `1 <= i <= 10`.
pub fn bol_loop(i: usize) -> Result<LoopTable> {
    match i {
        1 => loop_qxyr(1, 7, 0),
        2 => loop_qm(&M2),
        3 => loop_qxyr(1, 4, 0),
        4 => loop_qxyr(1, 7, 3),
        5 => loop_qxyr(4, 4, 0),
        6 => loop_qm(&M6),
        7 => loop_qxyr(7, 7, 0),
        8 => loop_qxyr(4, 4, 3),
        9 => loop_qmn(&M9, &BlockMatrix9::new(N9)?),
        10 => loop_qmn(&M10, &BlockMatrix9::new(N10)?),
        _ => Err(Error::UnknownName(format!("B{i}"))),
    }
}

pub fn catalog_loop(name: &str) -> Result<LoopTable> {
    match name {
        "Z27" => Ok(cyclic_group(27)),
        "Z9xZ3" => Ok(cyclic_group(9).direct_product(&cyclic_group(3))),
        "Z3^3" => Ok(cyclic_group(3)
            .direct_product(&cyclic_group(3))
            .direct_product(&cyclic_group(3))),
        "Heis3" => Ok(heisenberg27()),
        "Z9:Z3" => Ok(z9_semidirect_z3()),
        _ => match name.strip_prefix('B').and_then(|s| s.parse::<usize>().ok()) {
            Some(i) if (1..=10).contains(&i) => bol_loop(i),
            _ => Err(Error::UnknownName(name.to_string())),
        },
    }
}

/// The fifteen right Bol loops of order 27: the five groups, then `B1..B10`.
pub fn standard_loops() -> Vec<(&'static str, LoopTable)> {
    CATALOG_NAMES
        .iter()
        .map(|&name| (name, catalog_loop(name).expect("catalog entries build")))
        .collect()
}

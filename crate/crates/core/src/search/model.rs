//! Completion of partial right Bol loop tables by backtracking with
//! constraint propagation.

use crate::error::{Error, Result};
use crate::table::{Element, LoopTable};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

const EMPTY: u8 = u8::MAX;

/// Partition of the elements into blocks whose products are prescribed:
/// the product of an element of block `i` and one of block `j` lies in
/// block `product[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructure {
    pub block_of: Vec<usize>,
    pub product: Vec<Vec<usize>>,
}

/// A completion problem for right Bol loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub order: usize,
    /// Prescribed cells `(x, y, xy)`. The identity row and column are
    /// always prescribed.
    pub prescribed: Vec<(Element, Element, Element)>,
    pub blocks: Option<BlockStructure>,
    /// Elements required to lie in the left nucleus.
    pub left_nuclear: Vec<Element>,
}

/// Which order-9 normal subloop is prescribed in the trivial-center search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubloopCase {
    /// `Z_3 x Z_3`, with `(u, v)` encoded as `3u + v`.
    ElementaryAbelian,
    /// `Z_9`, relabelled so that its subgroup of order 3 is `{0, 1, 2}`.
    Cyclic,
}

impl SubloopCase {
    pub fn name(self) -> &'static str {
        match self {
            SubloopCase::ElementaryAbelian => "ea",
            SubloopCase::Cyclic => "cyc",
        }
    }

    /// Multiplication table of the prescribed subloop on `0..9`.
    pub fn table(self) -> LoopTable {
        match self {
            SubloopCase::ElementaryAbelian => {
                LoopTable::from_fn(9, |a, b| 3 * ((a / 3 + b / 3) % 3) + (a % 3 + b % 3) % 3)
            }
            SubloopCase::Cyclic => {
                // z in Z_9 gets label 3 (z mod 3) + z / 3
                let label = |z: usize| 3 * (z % 3) + z / 3;
                let mut value = [0usize; 9];
                for z in 0..9 {
                    value[label(z)] = z;
                }
                LoopTable::from_fn(9, |a, b| label((value[a] + value[b]) % 9))
            }
        }
        .expect("prescribed subloop is a group")
    }
}

impl SearchSpec {
    /// Order 27 loops with a normal subloop `M = {0..8}` of the given type
    /// containing `N = {0, 1, 2}` inside the left nucleus.
    ///
    /// The cosets of `M` are `{9..17}` and `{18..26}`, with `9 * 9 = 18`,
    /// `m * 9 = 9 + m` and `m * 18 = 18 + m` for `m` in `M`. Every loop with
    /// such `M` and `N` has a labelling of this form.
    pub fn trivial_center(case: SubloopCase) -> Self {
        let m = case.table();
        let mut prescribed = Vec::new();
        for a in 0..9 {
            for b in 0..9 {
                prescribed.push((a, b, m.mul(a, b)));
            }
        }
        for a in 1..9 {
            prescribed.push((a, 9, 9 + a));
            prescribed.push((a, 18, 18 + a));
        }
        prescribed.push((9, 9, 18));
        SearchSpec {
            order: 27,
            prescribed,
            blocks: Some(BlockStructure {
                block_of: (0..27).map(|x| x / 9).collect(),
                product: (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect(),
            }),
            left_nuclear: vec![1, 2],
        }
    }

    /// A short stable description, used to tie checkpoints to a spec.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("serializable");
        let mut h: u64 = 0xcbf29ce484222325;
        for b in json.bytes() {
            h = (h ^ b as u64).wrapping_mul(0x100000001b3);
        }
        format!("{:016x}", h)
    }
}

#[derive(Clone)]
struct State {
    n: usize,
    cells: Vec<u8>,
    dom: Vec<u32>,
    /// `row_inv[a * n + v]` is the `b` with `ab = v`, once known.
    row_inv: Vec<u8>,
    /// `col_inv[b * n + v]` is the `a` with `ab = v`, once known.
    col_inv: Vec<u8>,
    /// Number of cells in a row (column) that may still hold a value.
    row_cnt: Vec<u8>,
    col_cnt: Vec<u8>,
    filled: usize,
}

struct Conflict;

type Step = std::result::Result<(), Conflict>;

/// Static data shared by all search states.
struct Problem {
    left_nuclear: Vec<usize>,
    is_left_nuclear: Vec<bool>,
}

struct Propagator<'a> {
    pb: &'a Problem,
    pending: Vec<(u8, u8, u8)>,
    queue: Vec<(u8, u8)>,
}

impl State {
    fn new(n: usize, dom: Vec<u32>) -> Self {
        let mut row_cnt = vec![0u8; n * n];
        let mut col_cnt = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut d = dom[a * n + b];
                while d != 0 {
                    let v = d.trailing_zeros() as usize;
                    d &= d - 1;
                    row_cnt[a * n + v] += 1;
                    col_cnt[b * n + v] += 1;
                }
            }
        }
        State {
            n,
            cells: vec![EMPTY; n * n],
            dom,
            row_inv: vec![EMPTY; n * n],
            col_inv: vec![EMPTY; n * n],
            row_cnt,
            col_cnt,
            filled: 0,
        }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.cells[a * self.n + b];
        (v != EMPTY).then_some(v as usize)
    }

    /// The `b` with `ab = v`, if that cell is filled.
    #[inline]
    fn left_quot(&self, a: usize, v: usize) -> Option<usize> {
        let b = self.row_inv[a * self.n + v];
        (b != EMPTY).then_some(b as usize)
    }

    /// The `a` with `ab = v`, if that cell is filled.
    #[inline]
    fn right_quot(&self, v: usize, b: usize) -> Option<usize> {
        let a = self.col_inv[b * self.n + v];
        (a != EMPTY).then_some(a as usize)
    }

    fn to_loop(&self) -> LoopTable {
        LoopTable::from_flat(self.n, self.cells.iter().map(|&v| v as u16).collect())
            .expect("completed table is a loop")
    }
}

impl<'a> Propagator<'a> {
    fn new(pb: &'a Problem) -> Self {
        Propagator {
            pb,
            pending: Vec::new(),
            queue: Vec::new(),
        }
    }

    /// Removes `v` from the domain of the empty cell `(a, b)`.
    fn remove(&mut self, st: &mut State, a: usize, b: usize, v: usize) -> Step {
        let n = st.n;
        let cell = a * n + b;
        if st.dom[cell] & (1 << v) == 0 {
            return Ok(());
        }
        st.dom[cell] &= !(1 << v);
        match st.dom[cell].count_ones() {
            0 => return Err(Conflict),
            1 => self
                .pending
                .push((a as u8, b as u8, st.dom[cell].trailing_zeros() as u8)),
            _ => {}
        }
        st.row_cnt[a * n + v] -= 1;
        if st.row_inv[a * n + v] == EMPTY {
            match st.row_cnt[a * n + v] {
                0 => return Err(Conflict),
                1 => {
                    let c = (0..n)
                        .find(|&c| st.cells[a * n + c] == EMPTY && st.dom[a * n + c] & (1 << v) != 0)
                        .ok_or(Conflict)?;
                    self.pending.push((a as u8, c as u8, v as u8));
                }
                _ => {}
            }
        }
        st.col_cnt[b * n + v] -= 1;
        if st.col_inv[b * n + v] == EMPTY {
            match st.col_cnt[b * n + v] {
                0 => return Err(Conflict),
                1 => {
                    let r = (0..n)
                        .find(|&r| st.cells[r * n + b] == EMPTY && st.dom[r * n + b] & (1 << v) != 0)
                        .ok_or(Conflict)?;
                    self.pending.push((r as u8, b as u8, v as u8));
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn assign(&mut self, st: &mut State, a: usize, b: usize, v: usize) -> Step {
        let n = st.n;
        let cell = a * n + b;
        if st.cells[cell] != EMPTY {
            return if st.cells[cell] as usize == v { Ok(()) } else { Err(Conflict) };
        }
        if st.dom[cell] & (1 << v) == 0
            || st.row_inv[a * n + v] != EMPTY
            || st.col_inv[b * n + v] != EMPTY
        {
            return Err(Conflict);
        }
        st.cells[cell] = v as u8;
        st.row_inv[a * n + v] = b as u8;
        st.col_inv[b * n + v] = a as u8;
        st.filled += 1;
        let mut others = st.dom[cell] & !(1 << v);
        while others != 0 {
            let w = others.trailing_zeros() as usize;
            others &= others - 1;
            self.remove(st, a, b, w)?;
        }
        for c in 0..n {
            if st.cells[a * n + c] == EMPTY {
                self.remove(st, a, c, v)?;
            }
        }
        for r in 0..n {
            if st.cells[r * n + b] == EMPTY {
                self.remove(st, r, b, v)?;
            }
        }
        self.queue.push((a as u8, b as u8));
        Ok(())
    }

    fn run(&mut self, st: &mut State) -> Step {
        loop {
            if let Some((a, b, v)) = self.pending.pop() {
                self.assign(st, a as usize, b as usize, v as usize)?;
            } else if let Some((a, b)) = self.queue.pop() {
                self.consequences(st, a as usize, b as usize)?;
            } else {
                return Ok(());
            }
        }
    }

    /// Checks `((xy)z)y = x((yz)y)`, filling a missing product when all
    /// others are known.
    fn bol(&mut self, st: &State, x: usize, y: usize, z: usize) -> Step {
        if x == 0 || y == 0 {
            return Ok(());
        }
        let p1 = st.get(x, y);
        let p2 = p1.and_then(|p| st.get(p, z));
        let l = p2.and_then(|p| st.get(p, y));
        let q1 = st.get(y, z);
        let q2 = q1.and_then(|q| st.get(q, y));
        let r = q2.and_then(|q| st.get(x, q));
        match (l, r) {
            (Some(l), Some(r)) => {
                if l != r {
                    return Err(Conflict);
                }
            }
            (Some(v), None) => {
                if let Some(q2) = q2 {
                    self.push(x, q2, v);
                } else if let Some(w) = st.left_quot(x, v) {
                    if let Some(q1) = q1 {
                        self.push(q1, y, w);
                    } else if let Some(q1) = st.right_quot(w, y) {
                        self.push(y, z, q1);
                    }
                }
            }
            (None, Some(v)) => {
                if let Some(p2) = p2 {
                    self.push(p2, y, v);
                } else if let Some(w) = st.right_quot(v, y) {
                    if let Some(p1) = p1 {
                        self.push(p1, z, w);
                    } else if let Some(p1) = st.right_quot(w, z) {
                        self.push(x, y, p1);
                    }
                }
            }
            (None, None) => {}
        }
        Ok(())
    }

    /// Checks `(ky)z = k(yz)` for a left nuclear `k`.
    fn nuclear(&mut self, st: &State, k: usize, y: usize, z: usize) -> Step {
        let s1 = st.get(k, y);
        let l = s1.and_then(|s| st.get(s, z));
        let t1 = st.get(y, z);
        let r = t1.and_then(|t| st.get(k, t));
        match (l, r) {
            (Some(l), Some(r)) => {
                if l != r {
                    return Err(Conflict);
                }
            }
            (Some(v), None) => {
                if let Some(t1) = t1 {
                    self.push(k, t1, v);
                } else if let Some(w) = st.left_quot(k, v) {
                    self.push(y, z, w);
                }
            }
            (None, Some(v)) => {
                if let Some(s1) = s1 {
                    self.push(s1, z, v);
                } else if let Some(w) = st.right_quot(v, z) {
                    self.push(k, y, w);
                }
            }
            (None, None) => {}
        }
        Ok(())
    }

    #[inline]
    fn push(&mut self, a: usize, b: usize, v: usize) {
        self.pending.push((a as u8, b as u8, v as u8));
    }

    /// Visits every identity instance in which the filled cell `(a, b)`
    /// occurs as one of the products.
    fn consequences(&mut self, st: &State, a: usize, b: usize) -> Step {
        let n = st.n;
        for t in 0..n {
            // (x, y) = (a, b)
            self.bol(st, a, b, t)?;
            // (y, z) = (a, b)
            self.bol(st, t, a, b)?;
            // xy = a, z = b
            if let Some(x) = st.right_quot(a, t) {
                self.bol(st, x, t, b)?;
            }
            // (xy)z = a, y = b
            if let Some(p1) = st.right_quot(a, t) {
                if let Some(x) = st.right_quot(p1, b) {
                    self.bol(st, x, b, t)?;
                }
            }
            // x = a, (yz)y = b
            if let Some(q1) = st.right_quot(b, t) {
                if let Some(z) = st.left_quot(t, q1) {
                    self.bol(st, a, t, z)?;
                }
            }
        }
        // yz = a, y = b
        if let Some(z) = st.left_quot(b, a) {
            for x in 0..n {
                self.bol(st, x, b, z)?;
            }
        }
        let pb = self.pb;
        for &k in &pb.left_nuclear {
            // (y, z) = (a, b)
            self.nuclear(st, k, a, b)?;
            // ky = a, z = b
            if let Some(y) = st.left_quot(k, a) {
                self.nuclear(st, k, y, b)?;
            }
        }
        if pb.is_left_nuclear[a] {
            for t in 0..n {
                // (k, y) = (a, b)
                self.nuclear(st, a, b, t)?;
                // k = a, yz = b
                if let Some(z) = st.left_quot(t, b) {
                    self.nuclear(st, a, t, z)?;
                }
            }
        }
        Ok(())
    }
}

/// Tuning and bookkeeping for a model search.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    pub timeout: Option<Duration>,
    /// Completed subtrees are recorded here and skipped on a rerun.
    pub checkpoint: Option<PathBuf>,
    /// Branching depth at which the tree is split into subtrees.
    pub split_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 0,
            timeout: None,
            checkpoint: None,
            split_depth: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub models: Vec<LoopTable>,
    pub nodes: u64,
    pub subtrees: usize,
    /// Subtrees whose results came from the checkpoint.
    pub resumed: usize,
}

#[derive(Serialize, Deserialize, Default)]
struct Checkpoint {
    spec: String,
    subtrees: usize,
    done: BTreeMap<usize, Vec<Vec<Vec<usize>>>>,
}

fn initial_state(spec: &SearchSpec) -> Result<(Problem, Option<State>)> {
    let n = spec.order;
    if n == 0 || n > 32 {
        return Err(Error::InconsistentSpec(format!("order {n} outside 1..=32")));
    }
    let bad = |msg: String| Error::InconsistentSpec(msg);
    if let Some(bs) = &spec.blocks {
        let k = bs.product.len();
        if bs.block_of.len() != n
            || bs.block_of.iter().any(|&b| b >= k)
            || bs.product.iter().any(|r| r.len() != k || r.iter().any(|&b| b >= k))
        {
            return Err(bad("malformed block structure".into()));
        }
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut dom = vec![full; n * n];
    if let Some(bs) = &spec.blocks {
        let mut in_block = vec![0u32; bs.product.len()];
        for x in 0..n {
            in_block[bs.block_of[x]] |= 1 << x;
        }
        for a in 0..n {
            for b in 0..n {
                dom[a * n + b] &= in_block[bs.product[bs.block_of[a]][bs.block_of[b]]];
            }
        }
    }
    let mut is_left_nuclear = vec![false; n];
    for &k in &spec.left_nuclear {
        if k >= n {
            return Err(bad(format!("left nuclear element {k} out of range")));
        }
        is_left_nuclear[k] = true;
    }
    let pb = Problem {
        left_nuclear: spec.left_nuclear.iter().copied().filter(|&k| k != 0).collect(),
        is_left_nuclear,
    };
    let mut st = State::new(n, dom);
    let mut prop = Propagator::new(&pb);
    let mut cells: Vec<(usize, usize, usize)> = (0..n).flat_map(|x| [(0, x, x), (x, 0, x)]).collect();
    for &(a, b, v) in &spec.prescribed {
        if a >= n || b >= n || v >= n {
            return Err(bad(format!("prescribed cell ({a}, {b}) = {v} out of range")));
        }
        cells.push((a, b, v));
    }
    // direct contradictions among the prescribed cells are input errors
    let mut seen = vec![usize::MAX; n * n];
    for &(a, b, v) in &cells {
        let s = &mut seen[a * n + b];
        if *s != usize::MAX && *s != v {
            return Err(bad(format!("cell ({a}, {b}) prescribed twice")));
        }
        *s = v;
    }
    for a in 0..n {
        for v in 0..n {
            if (0..n).filter(|&b| seen[a * n + b] == v).count() > 1
                || (0..n).filter(|&b| seen[b * n + a] == v).count() > 1
            {
                return Err(bad(format!("value {v} repeated in line {a}")));
            }
        }
    }
    for &(a, b, v) in &cells {
        if st.dom[a * n + b] & (1 << v) == 0 {
            return Err(bad(format!("cell ({a}, {b}) = {v} violates the block structure")));
        }
    }
    for &(a, b, v) in &cells {
        if prop.assign(&mut st, a, b, v).is_err() {
            return Ok((pb, None));
        }
    }
    let ok = prop.run(&mut st).is_ok();
    Ok((pb, ok.then_some(st)))
}

fn choose_cell(st: &State) -> Option<usize> {
    let n = st.n;
    let mut col_filled = vec![0usize; n];
    for (i, &c) in st.cells.iter().enumerate() {
        if c != EMPTY {
            col_filled[i % n] += 1;
        }
    }
    let mut best: Option<((usize, u32), usize)> = None;
    for (i, &c) in st.cells.iter().enumerate() {
        if c == EMPTY {
            let key = (n - col_filled[i % n], st.dom[i].count_ones());
            if best.map_or(true, |(bk, _)| key < bk) {
                best = Some((key, i));
            }
        }
    }
    best.map(|(_, i)| i)
}

/// Children of a node, in value order, after propagation.
fn children(pb: &Problem, st: &State) -> Vec<State> {
    let Some(cell) = choose_cell(st) else {
        return Vec::new();
    };
    let n = st.n;
    let (a, b) = (cell / n, cell % n);
    let mut out = Vec::new();
    let mut d = st.dom[cell];
    while d != 0 {
        let v = d.trailing_zeros() as usize;
        d &= d - 1;
        let mut child = st.clone();
        let mut prop = Propagator::new(pb);
        if prop.assign(&mut child, a, b, v).is_ok() && prop.run(&mut child).is_ok() {
            out.push(child);
        }
    }
    out
}

struct Budget {
    deadline: Option<Instant>,
    expired: AtomicBool,
    nodes: AtomicU64,
}

impl Budget {
    fn tick(&self, local: &mut u64) -> Result<()> {
        *local += 1;
        if *local % 4096 == 0 {
            self.nodes.fetch_add(4096, Ordering::Relaxed);
            if self.expired.load(Ordering::Relaxed)
                || self.deadline.is_some_and(|d| Instant::now() >= d)
            {
                self.expired.store(true, Ordering::Relaxed);
                return Err(Error::Timeout);
            }
        }
        Ok(())
    }
}

fn solve(pb: &Problem, root: State, budget: &Budget) -> Result<Vec<LoopTable>> {
    let mut models = Vec::new();
    let mut stack = vec![root];
    let mut local = 0u64;
    while let Some(st) = stack.pop() {
        budget.tick(&mut local)?;
        if st.filled == st.n * st.n {
            models.push(st.to_loop());
            continue;
        }
        let mut kids = children(pb, &st);
        kids.reverse();
        stack.extend(kids);
    }
    budget.nodes.fetch_add(local % 4096, Ordering::Relaxed);
    Ok(models)
}

/// Subtree roots at the split depth, in depth-first order.
fn frontier(pb: &Problem, root: State, depth: usize) -> Vec<State> {
    let mut level = vec![root];
    for _ in 0..depth {
        let mut next = Vec::new();
        for st in level {
            if st.filled == st.n * st.n {
                next.push(st);
            } else {
                next.extend(children(pb, &st));
            }
        }
        level = next;
    }
    level
}

fn check_model(spec: &SearchSpec, q: &LoopTable) -> Result<()> {
    let n = spec.order;
    let prescribed_ok = spec.prescribed.iter().all(|&(a, b, v)| q.mul(a, b) == v);
    let nuclear_ok = spec.left_nuclear.iter().all(|&k| crate::invariants::in_left_nucleus(q, k));
    let blocks_ok = spec.blocks.as_ref().map_or(true, |bs| {
        (0..n).all(|a| {
            (0..n).all(|b| bs.block_of[q.mul(a, b)] == bs.product[bs.block_of[a]][bs.block_of[b]])
        })
    });
    if q.is_right_bol() && prescribed_ok && nuclear_ok && blocks_ok {
        Ok(())
    } else {
        Err(Error::InconsistentSpec("search produced a table violating its constraints".into()))
    }
}

/// All completions of the prescribed cells, in a deterministic order.
pub fn model_search(spec: &SearchSpec) -> Result<Vec<LoopTable>> {
    Ok(model_search_with(spec, &SearchOptions::default())?.models)
}

pub fn model_search_with(spec: &SearchSpec, opts: &SearchOptions) -> Result<SearchOutcome> {
    let (pb, root) = initial_state(spec)?;
    let Some(root) = root else {
        return Ok(SearchOutcome {
            models: Vec::new(),
            nodes: 1,
            subtrees: 0,
            resumed: 0,
        });
    };
    let roots = frontier(&pb, root, opts.split_depth);
    let digest = spec.digest();
    let mut checkpoint = Checkpoint {
        spec: digest.clone(),
        subtrees: roots.len(),
        done: BTreeMap::new(),
    };
    if let Some(path) = &opts.checkpoint {
        if let Ok(text) = std::fs::read_to_string(path) {
            let old: Checkpoint = serde_json::from_str(&text)
                .map_err(|e| Error::InconsistentSpec(format!("unreadable checkpoint: {e}")))?;
            if old.spec == digest && old.subtrees == roots.len() {
                checkpoint.done = old.done;
            }
        }
    }
    let resumed = checkpoint.done.len();
    let budget = Budget {
        deadline: opts.timeout.map(|t| Instant::now() + t),
        expired: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
    };
    let shared = Mutex::new(checkpoint);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::InconsistentSpec(e.to_string()))?;
    let results: Vec<Result<Vec<LoopTable>>> = pool.install(|| {
        roots
            .into_par_iter()
            .enumerate()
            .map(|(i, root)| {
                if let Some(done) = shared.lock().unwrap().done.get(&i) {
                    return done
                        .iter()
                        .map(|rows| LoopTable::validate(rows))
                        .collect::<Result<Vec<_>>>();
                }
                let models = solve(&pb, root, &budget)?;
                if let Some(path) = &opts.checkpoint {
                    let mut cp = shared.lock().unwrap();
                    cp.done.insert(i, models.iter().map(|q| q.to_rows()).collect());
                    let text = serde_json::to_string(&*cp).expect("serializable");
                    std::fs::write(path, text)
                        .map_err(|e| Error::InconsistentSpec(format!("cannot write checkpoint: {e}")))?;
                }
                Ok(models)
            })
            .collect()
    });
    let subtrees = results.len();
    let mut models = Vec::new();
    for r in results {
        models.extend(r?);
    }
    for q in &models {
        check_model(spec, q)?;
    }
    Ok(SearchOutcome {
        models,
        nodes: budget.nodes.load(Ordering::Relaxed),
        subtrees,
        resumed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty_spec(n: usize) -> SearchSpec {
        SearchSpec {
            order: n,
            prescribed: Vec::new(),
            blocks: None,
            left_nuclear: Vec::new(),
        }
    }

    #[test]
    fn small_orders_are_groups() {
        // right Bol loops of order < 6 are groups; normalized tables of the
        // groups of order 4 are the four labelings of Z_4 and one of Z_2^2
        assert_eq!(model_search(&empty_spec(1)).unwrap().len(), 1);
        assert_eq!(model_search(&empty_spec(2)).unwrap().len(), 1);
        assert_eq!(model_search(&empty_spec(3)).unwrap().len(), 1);
        let four = model_search(&empty_spec(4)).unwrap();
        assert_eq!(four.len(), 4);
        let five = model_search(&empty_spec(5)).unwrap();
        assert!(five.iter().all(|q| q.is_associative()));
        assert_eq!(five.len(), 6);
    }

    #[test]
    fn order_six() {
        let six = model_search(&empty_spec(6)).unwrap();
        assert!(six.iter().all(|q| q.is_right_bol()));
        let classes = crate::classify::up_to_isomorphism(&six);
        // the smallest nonassociative right Bol loops have order 8
        assert_eq!(classes.representatives.len(), 2);
    }

    #[test]
    fn prescribed_conflicts_are_rejected() {
        let mut spec = empty_spec(4);
        spec.prescribed = vec![(1, 1, 2), (1, 1, 3)];
        assert!(matches!(model_search(&spec), Err(Error::InconsistentSpec(_))));
        spec.prescribed = vec![(1, 1, 2), (1, 2, 2)];
        assert!(matches!(model_search(&spec), Err(Error::InconsistentSpec(_))));
    }

    #[test]
    fn unsatisfiable_spec_has_no_models() {
        let mut spec = empty_spec(3);
        spec.prescribed = vec![(1, 1, 0)];
        assert!(model_search(&spec).unwrap().is_empty());
    }

    #[test]
    fn prescribed_subloops() {
        for case in [SubloopCase::ElementaryAbelian, SubloopCase::Cyclic] {
            let m = case.table();
            assert!(m.is_associative() && m.is_commutative());
            assert_eq!(m.subloop_generated(&[1]), vec![0, 1, 2]);
        }
        assert_eq!(SubloopCase::Cyclic.table().exponent().unwrap(), 9);
        assert_eq!(SubloopCase::ElementaryAbelian.table().exponent().unwrap(), 3);
    }
}

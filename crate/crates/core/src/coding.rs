//! Pattern witnesses in finite partite hypergraphs: the grid / array / order
//! / partition forms of the functional order property, the subset-grid form
//! of the independence property, constructive conversions between them, and
//! a complete search for assignments that code a finite model's link
//! relation inside a hypergraph.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{parse_err, Error, Result};
use crate::tk::TkModel;

/// Function tables with more entries than this are rejected up front.
pub const FUNCTION_FAMILY_CAP: usize = 4096;

/// Finite sets X_1..X_{k+1} with an edge set inside their product.
/// Coordinates are part-local indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartiteHypergraph {
    pub k: usize,
    pub part_sizes: Vec<usize>,
    pub edges: BTreeSet<Vec<usize>>,
}

impl PartiteHypergraph {
    pub fn check_shape(&self) -> Result<()> {
        if self.k == 0 {
            return Err(parse_err("k", "k must be at least 1"));
        }
        if self.part_sizes.len() != self.k + 1 {
            return Err(parse_err(
                "part_sizes",
                format!("expected {} entries, got {}", self.k + 1, self.part_sizes.len()),
            ));
        }
        for e in &self.edges {
            if e.len() != self.k + 1 {
                return Err(parse_err("edges", format!("edge {e:?} does not have length {}", self.k + 1)));
            }
            if e.iter().zip(&self.part_sizes).any(|(&x, &s)| x >= s) {
                return Err(parse_err("edges", format!("edge {e:?} has a coordinate out of range")));
            }
        }
        Ok(())
    }

    pub fn has_edge(&self, e: &[usize]) -> bool {
        self.edges.contains(e)
    }

    /// Every edge present: the complete (k+1)-partite hypergraph.
    pub fn complete(k: usize, part_sizes: &[usize]) -> Self {
        let edges = part_sizes.iter().map(|&s| 0..s).multi_cartesian_product().collect();
        PartiteHypergraph { k, part_sizes: part_sizes.to_vec(), edges }
    }

    pub fn complement(&self) -> Self {
        let mut all = Self::complete(self.k, &self.part_sizes);
        all.edges = all.edges.difference(&self.edges).cloned().collect();
        all
    }
}

/// An entry of an order-format witness: a grid index tuple or a point index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderItem {
    Tuple(Vec<usize>),
    Point(usize),
}

/// A witness that a hypergraph codes one of the supported patterns.
/// Index conventions: grid positions and point indices are 0-based, and
/// function values live in {0..n-1}, so a coded region i_k <= f(...) is
/// never empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// One X_1 vertex per function [n]^(k-1) -> [n] (lexicographic table
    /// enumeration), plus one X_{t+1} row per axis.
    Grid { n: usize, a: Vec<usize>, b: Vec<Vec<usize>> },
    /// One X_1 vertex per (row, function [n]^k -> [n]) pair; the row index
    /// is consumed as the first function argument.
    Array { n: usize, a: Vec<Vec<usize>>, b: Vec<Vec<usize>> },
    /// A linear order on [n]^k union [n]; sequences for every axis and the
    /// point side. Edge iff the tuple precedes the point.
    Order { n: usize, order: Vec<OrderItem>, assign: Vec<Vec<usize>> },
    /// Cell labels 0..s-1 over [n]^k (lexicographic); edge to the j-th
    /// color vertex iff the cell label is >= j.
    Partition { n: usize, s: usize, cells: Vec<usize>, a: Vec<Vec<usize>>, b: Vec<usize> },
    /// One X_1 vertex per subset of [n]^k, indexed by bitmask over the
    /// lexicographic tuple enumeration.
    IpGrid { n: usize, a: Vec<usize>, b: Vec<Vec<usize>> },
}

/// Format names used in documents and conversion requests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessFormat {
    Grid,
    Array,
    Order,
    Partition,
    IpGrid,
}

impl Witness {
    pub fn format(&self) -> WitnessFormat {
        match self {
            Witness::Grid { .. } => WitnessFormat::Grid,
            Witness::Array { .. } => WitnessFormat::Array,
            Witness::Order { .. } => WitnessFormat::Order,
            Witness::Partition { .. } => WitnessFormat::Partition,
            Witness::IpGrid { .. } => WitnessFormat::IpGrid,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Witness::Grid { n, .. }
            | Witness::Array { n, .. }
            | Witness::Order { n, .. }
            | Witness::Partition { n, .. }
            | Witness::IpGrid { n, .. } => *n,
        }
    }
}

impl std::fmt::Display for WitnessFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            WitnessFormat::Grid => "grid",
            WitnessFormat::Array => "array",
            WitnessFormat::Order => "order",
            WitnessFormat::Partition => "partition",
            WitnessFormat::IpGrid => "ip_grid",
        };
        f.write_str(s)
    }
}

/// Number of functions [n]^args -> [n], or an error past the table cap.
pub fn function_count(n: usize, args: usize) -> Result<usize> {
    let domain = n.checked_pow(args as u32).ok_or_else(|| Error::Capacity("function domain".into()))?;
    let count = n.checked_pow(domain as u32).filter(|&c| c <= FUNCTION_FAMILY_CAP);
    count.ok_or_else(|| {
        Error::Capacity(format!("{n}^({n}^{args}) functions exceed the cap of {FUNCTION_FAMILY_CAP}"))
    })
}

/// The `idx`-th function table in the lexicographic enumeration of
/// [n]^args -> [n], as a value table over lexicographic argument tuples.
pub fn function_table(n: usize, args: usize, idx: usize) -> Vec<usize> {
    let domain = n.pow(args as u32);
    let mut rest = idx;
    let mut table = vec![0usize; domain];
    // Lexicographic over tables read as base-n numerals, most significant first.
    for slot in (0..domain).rev() {
        table[slot] = rest % n;
        rest /= n;
    }
    table.reverse();
    table
}

/// Lexicographic rank of an argument tuple in [n]^len.
pub fn tuple_rank(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn tuple_unrank(n: usize, len: usize, mut rank: usize) -> Vec<usize> {
    let mut t = vec![0usize; len];
    for slot in (0..len).rev() {
        t[slot] = rank % n;
        rank /= n;
    }
    t
}

fn check_vertex(e: &PartiteHypergraph, part: usize, v: usize) -> Result<()> {
    if v >= e.part_sizes[part] {
        return Err(parse_err("witness", format!("vertex {v} out of range for part {}", part + 1)));
    }
    Ok(())
}

fn check_axis_maps(e: &PartiteHypergraph, b: &[Vec<usize>], n: usize, first_part: usize) -> Result<()> {
    if b.len() != e.k {
        return Err(parse_err("witness", format!("expected {} axis maps", e.k)));
    }
    for (t, row) in b.iter().enumerate() {
        if row.len() != n {
            return Err(parse_err("witness", format!("axis map {} must have length {n}", t + 1)));
        }
        for &v in row {
            check_vertex(e, first_part + t, v)?;
        }
    }
    Ok(())
}

/// Check the defining biconditional of a witness against a hypergraph,
/// exhaustively over every index tuple.
pub fn fop_witness_check(e: &PartiteHypergraph, w: &Witness) -> Result<bool> {
    e.check_shape()?;
    match w {
        Witness::Grid { n, a, b } => {
            let n = *n;
            let count = function_count(n, e.k - 1)?;
            if a.len() != count {
                return Err(parse_err("witness", format!("grid expects {count} region vertices")));
            }
            for &v in a {
                check_vertex(e, 0, v)?;
            }
            check_axis_maps(e, b, n, 1)?;
            for (fi, &av) in a.iter().enumerate() {
                let table = function_table(n, e.k - 1, fi);
                for idx in (0..e.k).map(|_| 0..n).multi_cartesian_product() {
                    let inside = idx[e.k - 1] <= table[tuple_rank(n, &idx[..e.k - 1])];
                    let mut edge = vec![av];
                    edge.extend(idx.iter().enumerate().map(|(t, &i)| b[t][i]));
                    if e.has_edge(&edge) != inside {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Witness::Array { n, a, b } => {
            let n = *n;
            let count = function_count(n, e.k)?;
            if a.len() != n || a.iter().any(|row| row.len() != count) {
                return Err(parse_err("witness", format!("array expects {n} rows of {count} vertices")));
            }
            for row in a {
                for &v in row {
                    check_vertex(e, 0, v)?;
                }
            }
            check_axis_maps(e, b, n, 1)?;
            for (j, row) in a.iter().enumerate() {
                for (fi, &av) in row.iter().enumerate() {
                    let table = function_table(n, e.k, fi);
                    for idx in (0..e.k).map(|_| 0..n).multi_cartesian_product() {
                        let mut args = vec![j];
                        args.extend_from_slice(&idx[..e.k - 1]);
                        let inside = idx[e.k - 1] <= table[tuple_rank(n, &args)];
                        let mut edge = vec![av];
                        edge.extend(idx.iter().enumerate().map(|(t, &i)| b[t][i]));
                        if e.has_edge(&edge) != inside {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        }
        Witness::Order { n, order, assign } => {
            let n = *n;
            if assign.len() != e.k + 1 {
                return Err(parse_err("witness", format!("expected {} assignment rows", e.k + 1)));
            }
            for (t, row) in assign.iter().enumerate() {
                if row.len() != n {
                    return Err(parse_err("witness", format!("assignment row {} must have length {n}", t + 1)));
                }
                for &v in row {
                    check_vertex(e, t, v)?;
                }
            }
            let positions = order_positions(n, e.k, order)?;
            for idx in (0..e.k).map(|_| 0..n).multi_cartesian_product() {
                let tuple_pos = positions.tuple[tuple_rank(n, &idx)];
                for j in 0..n {
                    let mut edge: Vec<usize> =
                        idx.iter().enumerate().map(|(t, &i)| assign[t][i]).collect();
                    edge.push(assign[e.k][j]);
                    let inside = tuple_pos < positions.point[j];
                    if e.has_edge(&edge) != inside {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Witness::Partition { n, s, cells, a, b } => {
            let n = *n;
            let s = *s;
            let grid = n.pow(e.k as u32);
            if cells.len() != grid {
                return Err(parse_err("witness", format!("expected {grid} cell labels")));
            }
            if cells.iter().any(|&c| c >= s) {
                return Err(parse_err("witness", "cell label out of range"));
            }
            check_axis_maps(e, a, n, 0)?;
            if b.len() != s {
                return Err(parse_err("witness", format!("expected {s} color vertices")));
            }
            for &v in b {
                check_vertex(e, e.k, v)?;
            }
            for idx in (0..e.k).map(|_| 0..n).multi_cartesian_product() {
                let cell = cells[tuple_rank(n, &idx)];
                for (j, &bv) in b.iter().enumerate() {
                    let mut edge: Vec<usize> = idx.iter().enumerate().map(|(t, &i)| a[t][i]).collect();
                    edge.push(bv);
                    if e.has_edge(&edge) != (cell >= j) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Witness::IpGrid { n, a, b } => {
            let n = *n;
            let grid = n.pow(e.k as u32);
            let subsets = 1usize
                .checked_shl(grid as u32)
                .filter(|&c| c <= FUNCTION_FAMILY_CAP)
                .ok_or_else(|| Error::Capacity(format!("2^{grid} subsets exceed the cap")))?;
            if a.len() != subsets {
                return Err(parse_err("witness", format!("expected {subsets} subset vertices")));
            }
            for &v in a {
                check_vertex(e, 0, v)?;
            }
            check_axis_maps(e, b, n, 1)?;
            for (mask, &av) in a.iter().enumerate() {
                for idx in (0..e.k).map(|_| 0..n).multi_cartesian_product() {
                    let inside = mask >> tuple_rank(n, &idx) & 1 == 1;
                    let mut edge = vec![av];
                    edge.extend(idx.iter().enumerate().map(|(t, &i)| b[t][i]));
                    if e.has_edge(&edge) != inside {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

struct OrderPositions {
    /// Position in the order of the tuple with each lexicographic rank.
    tuple: Vec<usize>,
    /// Position in the order of each point index.
    point: Vec<usize>,
}

fn order_positions(n: usize, k: usize, order: &[OrderItem]) -> Result<OrderPositions> {
    let grid = n.pow(k as u32);
    let mut tuple = vec![usize::MAX; grid];
    let mut point = vec![usize::MAX; n];
    if order.len() != grid + n {
        return Err(parse_err("order", format!("expected {} items", grid + n)));
    }
    for (pos, item) in order.iter().enumerate() {
        match item {
            OrderItem::Tuple(t) => {
                if t.len() != k || t.iter().any(|&x| x >= n) {
                    return Err(parse_err("order", format!("bad tuple {t:?}")));
                }
                let r = tuple_rank(n, t);
                if tuple[r] != usize::MAX {
                    return Err(parse_err("order", format!("tuple {t:?} appears twice")));
                }
                tuple[r] = pos;
            }
            OrderItem::Point(j) => {
                if *j >= n {
                    return Err(parse_err("order", format!("bad point {j}")));
                }
                if point[*j] != usize::MAX {
                    return Err(parse_err("order", format!("point {j} appears twice")));
                }
                point[*j] = pos;
            }
        }
    }
    Ok(OrderPositions { tuple, point })
}

/// Convert a witness into another format via the constructive directions:
/// grid<->array, grid->order, order->partition, partition->grid, and
/// ip_grid->grid. The output is re-verified against `e` before return.
pub fn convert_witness(e: &PartiteHypergraph, w: &Witness, to: WitnessFormat) -> Result<Witness> {
    e.check_shape()?;
    if !fop_witness_check(e, w)? {
        return Err(Error::Invalid("source witness fails its own check".into()));
    }
    let out = match (w, to) {
        (Witness::Grid { n, a, b }, WitnessFormat::Array) => grid_to_array(e.k, *n, a, b)?,
        (Witness::Array { n, a, b }, WitnessFormat::Grid) => array_to_grid(e.k, *n, a, b)?,
        (Witness::Grid { n, a, b }, WitnessFormat::Order) => grid_to_order(e.k, *n, a, b)?,
        (Witness::Order { n, order, assign }, WitnessFormat::Partition) => {
            order_to_partition(e.k, *n, order, assign)?
        }
        (Witness::Partition { n, s, cells, a, b }, WitnessFormat::Grid) => {
            partition_to_grid(e.k, *n, *s, cells, a, b)?
        }
        (Witness::IpGrid { n, a, b }, WitnessFormat::Grid) => ip_to_grid(e.k, *n, a, b)?,
        (w, to) => {
            return Err(Error::NoSuchConversion { from: w.format().to_string(), to: to.to_string() })
        }
    };
    if !fop_witness_check(e, &out)? {
        return Err(Error::Internal("converted witness fails verification".into()));
    }
    Ok(out)
}

/// Row j of the array reuses the grid vertex of the function's j-th section.
fn grid_to_array(k: usize, n: usize, a: &[usize], b: &[Vec<usize>]) -> Result<Witness> {
    let count = function_count(n, k)?;
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(count);
        for g in 0..count {
            let table = function_table(n, k, g);
            // Section of g along first argument j, as a (k-1)-ary table.
            let section: Vec<usize> = (0..n.pow((k - 1) as u32))
                .map(|r| {
                    let mut args = vec![j];
                    args.extend(tuple_unrank(n, k - 1, r));
                    table[tuple_rank(n, &args)]
                })
                .collect();
            row.push(a[table_index(n, &section)]);
        }
        rows.push(row);
    }
    Ok(Witness::Array { n, a: rows, b: b.to_vec() })
}

/// The grid function becomes a k-argument function ignoring its first
/// argument; row 0 of the array supplies the vertices.
fn array_to_grid(k: usize, n: usize, a: &[Vec<usize>], b: &[Vec<usize>]) -> Result<Witness> {
    let count = function_count(n, k - 1)?;
    let mut out = Vec::with_capacity(count);
    for h in 0..count {
        let table = function_table(n, k - 1, h);
        let lifted: Vec<usize> = (0..n.pow(k as u32))
            .map(|r| {
                let args = tuple_unrank(n, k, r);
                table[tuple_rank(n, &args[1..])]
            })
            .collect();
        out.push(a[0][table_index(n, &lifted)]);
    }
    Ok(Witness::Grid { n, a: out, b: b.to_vec() })
}

fn table_index(n: usize, table: &[usize]) -> usize {
    table.iter().fold(0, |acc, &v| acc * n + v)
}

/// Canonical order built from per-row functions: points in reverse numeric
/// order, each tuple placed directly before the point at its function value.
fn grid_to_order(k: usize, n: usize, a: &[usize], b: &[Vec<usize>]) -> Result<Witness> {
    let count = function_count(n, k - 1)?;
    // Deterministic spread of rows over the available functions.
    let row_fn: Vec<usize> = (0..n).map(|i| i % count).collect();
    let mut order = Vec::new();
    for c in (0..n).rev() {
        for r in 0..n.pow(k as u32) {
            let t = tuple_unrank(n, k, r);
            let table = function_table(n, k - 1, row_fn[t[0]]);
            if table[tuple_rank(n, &t[1..])] == c {
                order.push(OrderItem::Tuple(t));
            }
        }
        order.push(OrderItem::Point(c));
    }
    let mut assign = Vec::with_capacity(k + 1);
    assign.push(row_fn.iter().map(|&fi| a[fi]).collect());
    for row in b {
        assign.push(row.clone());
    }
    Ok(Witness::Order { n, order, assign })
}

/// Colors are the points read from the top of the order; a tuple's cell is
/// one less than the number of points above it. Requires the order's maximum
/// item to be a point.
fn order_to_partition(
    k: usize,
    n: usize,
    order: &[OrderItem],
    assign: &[Vec<usize>],
) -> Result<Witness> {
    let positions = order_positions(n, k, order)?;
    if !matches!(order.last(), Some(OrderItem::Point(_))) {
        return Err(Error::Unsupported(
            "order-to-partition needs the maximum item to be a point".into(),
        ));
    }
    // Points sorted by their position in the order, descending.
    let mut by_pos: Vec<(usize, usize)> =
        positions.point.iter().enumerate().map(|(j, &pos)| (pos, j)).collect();
    by_pos.sort_unstable();
    let cells: Vec<usize> = (0..n.pow(k as u32))
        .map(|r| {
            let tp = positions.tuple[r];
            let above = positions.point.iter().filter(|&&pp| pp > tp).count();
            above - 1
        })
        .collect();
    let b: Vec<usize> = by_pos.iter().rev().map(|&(_, j)| assign[k][j]).collect();
    Ok(Witness::Partition { n, s: n, cells, a: assign[..k].to_vec(), b })
}

/// Function-family construction: pick the largest n_g <= min(n, s) such that
/// for every function [n_g]^(k-1) -> [n_g] some row's cell pattern realizes
/// it, then reuse those rows as the grid vertices.
fn partition_to_grid(
    k: usize,
    n: usize,
    s: usize,
    cells: &[usize],
    a: &[Vec<usize>],
    b: &[usize],
) -> Result<Witness> {
    for ng in (1..=n.min(s)).rev() {
        let Ok(count) = function_count(ng, k - 1) else { continue };
        let mut picks = Vec::with_capacity(count);
        'funcs: for fi in 0..count {
            let table = function_table(ng, k - 1, fi);
            for row in 0..n {
                let matches = (0..ng.pow((k - 1) as u32)).all(|r| {
                    let mut args = vec![row];
                    args.extend(tuple_unrank(ng, k - 1, r));
                    cells[tuple_rank(n, &args)] == table[r]
                });
                if matches {
                    picks.push(a[0][row]);
                    continue 'funcs;
                }
            }
            picks.clear();
            break;
        }
        if picks.len() == count {
            let mut axis = Vec::with_capacity(k);
            for t in 1..k {
                axis.push(a[t][..ng].to_vec());
            }
            axis.push(b[..ng].to_vec());
            return Ok(Witness::Grid { n: ng, a: picks, b: axis });
        }
    }
    Err(Error::Unsupported(
        "partition rows do not realize every function of any positive grid size".into(),
    ))
}

/// Identify each function with the subset under its graph.
fn ip_to_grid(k: usize, n: usize, a: &[usize], b: &[Vec<usize>]) -> Result<Witness> {
    let count = function_count(n, k - 1)?;
    let grid = n.pow(k as u32);
    let mut out = Vec::with_capacity(count);
    for fi in 0..count {
        let table = function_table(n, k - 1, fi);
        let mut mask = 0usize;
        for r in 0..grid {
            let t = tuple_unrank(n, k, r);
            if t[k - 1] <= table[tuple_rank(n, &t[..k - 1])] {
                mask |= 1 << r;
            }
        }
        out.push(a[mask]);
    }
    Ok(Witness::Grid { n, a: out, b: b.to_vec() })
}

/// An assignment of a model's elements to hypergraph vertices (part-local),
/// indexed by element id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingAssignment {
    pub map: Vec<usize>,
}

/// Check a supplied assignment: parts respected and edges mirror the link
/// relation over the full product.
pub fn verify_coding(h: &TkModel, e: &PartiteHypergraph, assignment: &CodingAssignment) -> Result<bool> {
    h.check_shape()?;
    e.check_shape()?;
    if h.k != e.k {
        return Err(Error::ArityMismatch(format!("k = {} vs {}", h.k, e.k)));
    }
    if assignment.map.len() != h.size() {
        return Err(parse_err("assignment", "length must equal the model size"));
    }
    for (x, &v) in assignment.map.iter().enumerate() {
        if v >= e.part_sizes[h.part_of(x)] {
            return Ok(false);
        }
    }
    Ok(coding_consistent(h, e, &assignment.map))
}

fn coding_consistent(h: &TkModel, e: &PartiteHypergraph, map: &[usize]) -> bool {
    for t in h.q_tuples_lex() {
        for w in h.last_part() {
            let mut edge: Vec<usize> = t.iter().map(|&x| map[x]).collect();
            edge.push(map[w]);
            if e.has_edge(&edge) != h.has_edge(&t, w) {
                return false;
            }
        }
    }
    true
}

/// Complete backtracking search for a coding assignment. Elements are
/// assigned part by part, most constrained part first, with the biconditional
/// checked as soon as every coordinate of a product tuple is placed. Returns
/// the first assignment in that deterministic search order.
pub fn find_r_coding(h: &TkModel, e: &PartiteHypergraph) -> Result<Option<CodingAssignment>> {
    let report = crate::tk::validate_tk(h)?;
    if !report.is_valid() {
        return Err(Error::Invalid("model fails validation".into()));
    }
    e.check_shape()?;
    if h.k != e.k {
        return Err(Error::ArityMismatch(format!("k = {} vs {}", h.k, e.k)));
    }
    if h.part_sizes.iter().zip(&e.part_sizes).any(|(&hs, &es)| hs > 0 && es == 0) {
        return Ok(None);
    }
    // Branching factor |X_i|^{|P_i|} per part, smallest first.
    let mut part_order: Vec<usize> = (0..=h.k).collect();
    part_order.sort_by_key(|&i| (e.part_sizes[i] as f64).powi(h.part_sizes[i] as i32) as u64);
    let elements: Vec<usize> =
        part_order.iter().flat_map(|&i| h.part_elements(i)).collect();
    let mut slot_of = vec![usize::MAX; h.size()];
    for (slot, &x) in elements.iter().enumerate() {
        slot_of[x] = slot;
    }
    // For each slot, the product tuples completed exactly when it is filled.
    let mut checks: Vec<Vec<(Vec<usize>, usize)>> = vec![Vec::new(); elements.len().max(1)];
    for t in h.q_tuples_lex() {
        for w in h.last_part() {
            let last = t.iter().chain([&w]).map(|&x| slot_of[x]).max().unwrap();
            checks[last].push((t.clone(), w));
        }
    }
    let mut map = vec![0usize; h.size()];
    if search(h, e, &elements, &checks, &mut map, 0) {
        return Ok(Some(CodingAssignment { map }));
    }
    return Ok(None);

    fn search(
        h: &TkModel,
        e: &PartiteHypergraph,
        elements: &[usize],
        checks: &[Vec<(Vec<usize>, usize)>],
        map: &mut Vec<usize>,
        slot: usize,
    ) -> bool {
        if slot == elements.len() {
            return true;
        }
        let x = elements[slot];
        for v in 0..e.part_sizes[h.part_of(x)] {
            map[x] = v;
            let ok = checks[slot].iter().all(|(t, w)| {
                let mut edge: Vec<usize> = t.iter().map(|&y| map[y]).collect();
                edge.push(map[*w]);
                e.has_edge(&edge) == h.has_edge(t, *w)
            });
            if ok && search(h, e, elements, checks, map, slot + 1) {
                return true;
            }
        }
        false
    }
}

/// Complete search for a subset-grid witness: per-part sorted injective axis
/// choices, then a vertex of X_1 for every subset pattern. First witness in
/// lexicographic order of the axis choices.
pub fn find_ip_grid(e: &PartiteHypergraph, n: usize) -> Result<Option<Witness>> {
    e.check_shape()?;
    if n == 0 {
        return Err(parse_err("n", "n must be positive"));
    }
    let grid = match n.checked_pow(e.k as u32) {
        Some(g) if g < usize::BITS as usize => g,
        _ => return Err(Error::Capacity("grid too large for subset masks".into())),
    };
    let subsets = 1usize << grid;
    if subsets > FUNCTION_FAMILY_CAP {
        return Err(Error::Capacity(format!("2^{grid} subsets exceed the cap")));
    }
    if subsets > e.part_sizes[0] {
        return Ok(None);
    }
    if e.part_sizes[1..].iter().any(|&s| s < n) {
        return Ok(None);
    }
    let axis_choices: Vec<Vec<Vec<usize>>> =
        (1..=e.k).map(|t| (0..e.part_sizes[t]).combinations(n).collect()).collect();
    for b in axis_choices.iter().map(|v| v.iter()).multi_cartesian_product() {
        // Pattern of each X_1 vertex over the chosen grid.
        let mut by_mask: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..e.part_sizes[0] {
            let mut mask = 0usize;
            for (r, idx) in (0..e.k).map(|_| 0..n).multi_cartesian_product().enumerate() {
                let mut edge = vec![v];
                edge.extend(idx.iter().enumerate().map(|(t, &i)| b[t][i]));
                if e.has_edge(&edge) {
                    mask |= 1 << r;
                }
            }
            by_mask.entry(mask).or_insert(v);
        }
        if by_mask.len() == subsets {
            let a: Vec<usize> = (0..subsets).map(|mask| by_mask[&mask]).collect();
            return Ok(Some(Witness::IpGrid { n, a, b: b.into_iter().cloned().collect() }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tk::{enumerate_models, to_hypergraph};

    fn hg(k: usize, sizes: &[usize], edges: &[&[usize]]) -> PartiteHypergraph {
        PartiteHypergraph {
            k,
            part_sizes: sizes.to_vec(),
            edges: edges.iter().map(|e| e.to_vec()).collect(),
        }
    }

    #[test]
    fn grid_n1_examples() {
        // Single function (constant 0), region 0 <= 0 always: the edge must exist.
        let e = hg(2, &[1, 1, 1], &[&[0, 0, 0]]);
        let w = Witness::Grid { n: 1, a: vec![0], b: vec![vec![0], vec![0]] };
        assert!(fop_witness_check(&e, &w).unwrap());
        let empty = hg(2, &[1, 1, 1], &[]);
        assert!(!fop_witness_check(&empty, &w).unwrap());
    }

    #[test]
    fn order_n1_example() {
        let w = Witness::Order {
            n: 1,
            order: vec![OrderItem::Tuple(vec![0, 0]), OrderItem::Point(0)],
            assign: vec![vec![0], vec![0], vec![0]],
        };
        let with_edge = hg(2, &[1, 1, 1], &[&[0, 0, 0]]);
        let without = hg(2, &[1, 1, 1], &[]);
        assert!(fop_witness_check(&with_edge, &w).unwrap());
        assert!(!fop_witness_check(&without, &w).unwrap());
    }

    #[test]
    fn grid_to_order_and_partition_round() {
        // n = 2, k = 2: 4 functions [2] -> [2]; build E from a grid witness.
        let n = 2;
        let count = function_count(n, 1).unwrap();
        let a: Vec<usize> = (0..count).collect();
        let b = vec![vec![0, 1], vec![0, 1]];
        let mut edges = BTreeSet::new();
        for fi in 0..count {
            let table = function_table(n, 1, fi);
            for i1 in 0..n {
                for i2 in 0..n {
                    if i2 <= table[i1] {
                        edges.insert(vec![fi, i1, i2]);
                    }
                }
            }
        }
        let e = PartiteHypergraph { k: 2, part_sizes: vec![count, n, n], edges };
        let grid = Witness::Grid { n, a, b };
        assert!(fop_witness_check(&e, &grid).unwrap());

        let order = convert_witness(&e, &grid, WitnessFormat::Order).unwrap();
        assert!(fop_witness_check(&e, &order).unwrap());

        let partition = convert_witness(&e, &order, WitnessFormat::Partition).unwrap();
        assert!(fop_witness_check(&e, &partition).unwrap());

        let array = convert_witness(&e, &grid, WitnessFormat::Array).unwrap();
        assert!(fop_witness_check(&e, &array).unwrap());
        let back = convert_witness(&e, &array, WitnessFormat::Grid).unwrap();
        assert!(fop_witness_check(&e, &back).unwrap());
    }

    #[test]
    fn reverse_order_is_complement_witness() {
        let n = 2;
        let order = vec![
            OrderItem::Tuple(vec![0, 0]),
            OrderItem::Point(0),
            OrderItem::Tuple(vec![0, 1]),
            OrderItem::Tuple(vec![1, 0]),
            OrderItem::Point(1),
            OrderItem::Tuple(vec![1, 1]),
        ];
        let assign = vec![vec![0, 1], vec![0, 1], vec![0, 1]];
        let mut edges = BTreeSet::new();
        let positions = order_positions(n, 2, &order).unwrap();
        for i1 in 0..n {
            for i2 in 0..n {
                for j in 0..n {
                    if positions.tuple[tuple_rank(n, &[i1, i2])] < positions.point[j] {
                        edges.insert(vec![i1, i2, j]);
                    }
                }
            }
        }
        let e = PartiteHypergraph { k: 2, part_sizes: vec![n, n, n], edges };
        let w = Witness::Order { n, order: order.clone(), assign: assign.clone() };
        assert!(fop_witness_check(&e, &w).unwrap());
        let reversed = Witness::Order { n, order: order.into_iter().rev().collect(), assign };
        assert!(fop_witness_check(&e.complement(), &reversed).unwrap());
    }

    #[test]
    fn coding_examples() {
        // Single tuple linked to the single point.
        let h = crate::tk::tests::model(2, &[1, 1, 1], &[&[0, 1]], &[(&[0, 1], 2)]);
        let e = hg(2, &[1, 1, 2], &[&[0, 0, 0]]);
        let found = find_r_coding(&h, &e).unwrap().unwrap();
        assert!(verify_coding(&h, &e, &found).unwrap());
        assert_eq!(found.map, vec![0, 0, 0]);

        // A complete hypergraph cannot separate a linked from an unlinked pair.
        let h2 = crate::tk::tests::model(
            2,
            &[1, 1, 2],
            &[&[0, 1]],
            &[(&[0, 1], 3)],
        );
        let complete = PartiteHypergraph::complete(2, &[2, 2, 2]);
        assert!(find_r_coding(&h2, &complete).unwrap().is_none());
    }

    #[test]
    fn self_coding_for_small_models() {
        for sizes in [[1, 1, 2], [1, 2, 2], [2, 2, 1]] {
            for m in enumerate_models(2, &sizes).unwrap() {
                let e = to_hypergraph(&m);
                let found = find_r_coding(&m, &e).unwrap().expect("identity assignment exists");
                assert!(verify_coding(&m, &e, &found).unwrap());
            }
        }
    }

    #[test]
    fn ip_grid_examples() {
        let e = hg(2, &[2, 1, 1], &[&[1, 0, 0]]);
        let w = find_ip_grid(&e, 1).unwrap().unwrap();
        match &w {
            Witness::IpGrid { a, .. } => assert_eq!(a, &vec![0, 1]),
            _ => panic!(),
        }
        assert!(fop_witness_check(&e, &w).unwrap());

        let empty = hg(2, &[2, 1, 1], &[]);
        assert!(find_ip_grid(&empty, 1).unwrap().is_none());

        // No valid model's link hypergraph shatters a 2x2 grid: the crossing
        // configuration required is forbidden. Checked by exhaustive search.
        for m in enumerate_models(2, &[2, 2, 2]).unwrap().step_by(17) {
            let e = to_hypergraph(&m);
            assert!(find_ip_grid(&e, 2).unwrap().is_none());
        }
    }

    #[test]
    fn shattering_codes_every_link_pattern() {
        // Build a 2x2 shattered grid and check coding succeeds for models
        // whose link rows live inside it.
        let n = 2;
        let grid = 4;
        let mut edges = BTreeSet::new();
        for mask in 0..1usize << grid {
            for r in 0..grid {
                if mask >> r & 1 == 1 {
                    let t = tuple_unrank(n, 2, r);
                    edges.insert(vec![mask, t[0], t[1]]);
                }
            }
        }
        let e = PartiteHypergraph { k: 2, part_sizes: vec![16, n, n], edges };
        assert!(find_ip_grid(&e, 2).unwrap().is_some());
        for m in enumerate_models(2, &[2, 2, 2]).unwrap().step_by(23) {
            assert!(find_r_coding(&m, &e).unwrap().is_some());
        }
    }
}

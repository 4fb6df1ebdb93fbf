//! Finite structures with k+1 ordered parts, a linear order on the Cartesian
//! product Q = P_1 x ... x P_k, and a monotone link relation R between Q and
//! the last part. Elements are the integers 0..N-1; part i is the i-th
//! contiguous block and the global order is numeric, so the partition and
//! block-ordering axioms are baked into the representation and only re-checked
//! on ingestion.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{parse_err, Error, Result};
use crate::report::ValidationReport;

/// A finite model: part sizes, the tuple order (all of Q listed in increasing
/// order), and the link relation as an explicit edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TkModel {
    pub k: usize,
    pub part_sizes: Vec<usize>,
    pub qorder: Vec<Vec<usize>>,
    pub r_edges: BTreeSet<(Vec<usize>, usize)>,
}

/// One entry of the interleaved order on Q union P_{k+1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StarItem {
    Tuple(Vec<usize>),
    Point(usize),
}

pub type StarOrder = Vec<StarItem>;

/// Sublanguage selector for quantifier-free type fingerprints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfLang {
    /// Parts, both orders, and the link relation.
    Full,
    /// Parts and both orders, link relation dropped.
    NoLink,
    /// Parts and the element order only.
    PartsOrder,
    /// Parts 1..k, element order, tuple order (last part and link dropped).
    TupleOrder,
}

/// Canonical encoding of the atomic diagram of a tuple over a sublanguage.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QfTypeFingerprint {
    pub lang: QfLang,
    pub bytes: Vec<u8>,
}

impl TkModel {
    /// Structural sanity: sizes consistent, ids in range, tuple lengths k.
    /// Violations here are parse errors, not axiom violations.
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
        let n = self.size();
        for t in &self.qorder {
            if t.len() != self.k {
                return Err(parse_err("qorder", format!("tuple {t:?} does not have length {}", self.k)));
            }
            if t.iter().any(|&x| x >= n) {
                return Err(parse_err("qorder", format!("tuple {t:?} has an element out of range")));
            }
        }
        for (t, w) in &self.r_edges {
            if t.len() != self.k {
                return Err(parse_err("R", format!("tuple {t:?} does not have length {}", self.k)));
            }
            if t.iter().any(|&x| x >= n) || *w >= n {
                return Err(parse_err("R", format!("edge ({t:?},{w}) has an element out of range")));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    /// First element id of part `i` (0-based part index).
    pub fn part_start(&self, i: usize) -> usize {
        self.part_sizes[..i].iter().sum()
    }

    /// 0-based part index of an element.
    pub fn part_of(&self, x: usize) -> usize {
        let mut acc = 0;
        for (i, &s) in self.part_sizes.iter().enumerate() {
            acc += s;
            if x < acc {
                return i;
            }
        }
        panic!("element {x} out of range");
    }

    pub fn part_elements(&self, i: usize) -> std::ops::Range<usize> {
        let start = self.part_start(i);
        start..start + self.part_sizes[i]
    }

    /// Number of Q-tuples (product of the first k part sizes).
    pub fn q_count(&self) -> usize {
        self.part_sizes[..self.k].iter().product()
    }

    pub fn last_part(&self) -> std::ops::Range<usize> {
        self.part_elements(self.k)
    }

    /// All of Q in lexicographic element order.
    pub fn q_tuples_lex(&self) -> Vec<Vec<usize>> {
        self.part_sizes[..self.k]
            .iter()
            .enumerate()
            .map(|(i, _)| self.part_elements(i))
            .multi_cartesian_product()
            .collect()
    }

    pub fn is_q_tuple(&self, t: &[usize]) -> bool {
        t.len() == self.k && t.iter().enumerate().all(|(i, &x)| self.part_elements(i).contains(&x))
    }

    pub fn has_edge(&self, t: &[usize], w: usize) -> bool {
        self.r_edges.contains(&(t.to_vec(), w))
    }

    /// Position of a tuple in the tuple order, if it occurs.
    pub fn q_rank(&self, t: &[usize]) -> Option<usize> {
        self.qorder.iter().position(|u| u == t)
    }

    /// Least related point of each tuple, in tuple-order position; `None`
    /// marks an empty row. Meaningful for valid models, where rows are up-sets.
    pub fn thresholds(&self) -> Vec<Option<usize>> {
        self.qorder
            .iter()
            .map(|t| self.last_part().find(|&w| self.has_edge(t, w)))
            .collect()
    }
}

/// Check every axiom and report each violation with a concrete witness.
/// Axioms are numbered (1) parts partition, (2) element order with blocks
/// ascending, (3) link relation confined to Q x P_{k+1}, (4) tuple order
/// linear on exactly Q, (5) monotonicity.
pub fn validate_tk(doc: &TkModel) -> Result<ValidationReport> {
    doc.check_shape()?;
    let mut report = ValidationReport::default();
    // (1) and (2) hold by representation; nothing can violate them once the
    // shape check passes.

    for (t, w) in &doc.r_edges {
        if !doc.is_q_tuple(t) || doc.part_of(*w) != doc.k {
            report.push(3, format!("edge ({t:?},{w}) leaves Q x P_{}", doc.k + 1));
        }
    }

    let expected: BTreeSet<Vec<usize>> = doc.q_tuples_lex().into_iter().collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for t in &doc.qorder {
        if !expected.contains(t) {
            report.push(4, format!("tuple {t:?} listed in the tuple order is not in Q"));
        } else if !seen.insert(t.clone()) {
            report.push(4, format!("tuple {t:?} listed twice in the tuple order"));
        }
    }
    for t in expected.iter() {
        if !seen.contains(t) {
            report.push(4, format!("tuple {t:?} missing from the tuple order"));
        }
    }

    // Only check monotonicity over edges that made it into Q x P_{k+1} and a
    // well-formed tuple order; otherwise the witnesses below would be noise.
    if report.is_valid() {
        // Direct check of axiom (5).
        for (yi, y) in doc.qorder.iter().enumerate() {
            for x in &doc.qorder[..=yi] {
                for w in doc.last_part() {
                    if !doc.has_edge(y, w) {
                        continue;
                    }
                    for z in w..doc.last_part().end {
                        if !doc.has_edge(x, z) {
                            report.push(
                                5,
                                format!("x={x:?} <=_k y={y:?}, R(y,{w}), {w} <= {z}, but not R(x,{z})"),
                            );
                        }
                    }
                }
            }
        }
        // Equivalent threshold view: rows are up-sets and the least related
        // point is weakly monotone along the tuple order. Both checks must
        // agree.
        let threshold_ok = rows_are_upsets(doc) && thresholds_monotone(doc);
        debug_assert_eq!(report.is_valid(), threshold_ok, "axiom-5 checks disagree");
        if report.is_valid() != threshold_ok {
            return Err(Error::Internal("direct and threshold monotonicity checks disagree".into()));
        }
    }
    Ok(report)
}

fn rows_are_upsets(doc: &TkModel) -> bool {
    doc.qorder.iter().all(|t| {
        let row: Vec<usize> = doc.last_part().filter(|&w| doc.has_edge(t, w)).collect();
        match row.first() {
            None => true,
            Some(&first) => row.len() == doc.last_part().end - first,
        }
    })
}

fn thresholds_monotone(doc: &TkModel) -> bool {
    let th = doc.thresholds();
    let end = doc.last_part().end;
    th.windows(2).all(|w| w[0].unwrap_or(end) <= w[1].unwrap_or(end))
}

/// The interleaved linear order on Q union P_{k+1}: tuples by the tuple
/// order, points by the element order, and a tuple precedes a point exactly
/// when they are linked.
pub fn star_order(doc: &TkModel) -> Result<StarOrder> {
    let report = validate_tk(doc)?;
    if !report.is_valid() {
        return Err(Error::Invalid(format!("{} axiom violation(s)", report.violations.len())));
    }
    let mut items = Vec::with_capacity(doc.qorder.len() + doc.part_sizes[doc.k]);
    let mut next = 0usize;
    for w in doc.last_part() {
        while next < doc.qorder.len() && doc.has_edge(&doc.qorder[next], w) {
            items.push(StarItem::Tuple(doc.qorder[next].clone()));
            next += 1;
        }
        items.push(StarItem::Point(w));
    }
    for t in &doc.qorder[next..] {
        items.push(StarItem::Tuple(t.clone()));
    }
    Ok(items)
}

/// Rebuild a model from an interleaved order: the tuple order is the tuple
/// subsequence, and a tuple is linked to every point after it.
pub fn from_star_order(k: usize, part_sizes: &[usize], ranking: &StarOrder) -> Result<TkModel> {
    let scaffold = TkModel {
        k,
        part_sizes: part_sizes.to_vec(),
        qorder: Vec::new(),
        r_edges: BTreeSet::new(),
    };
    if part_sizes.len() != k + 1 {
        return Err(parse_err("part_sizes", format!("expected {} entries", k + 1)));
    }
    let expected: BTreeSet<Vec<usize>> = scaffold.q_tuples_lex().into_iter().collect();
    let mut qorder = Vec::new();
    let mut points = Vec::new();
    let mut seen_tuples = BTreeSet::new();
    let mut seen_points = BTreeSet::new();
    for item in ranking {
        match item {
            StarItem::Tuple(t) => {
                if !expected.contains(t) {
                    return Err(parse_err("items", format!("{t:?} is not a Q-tuple for these sizes")));
                }
                if !seen_tuples.insert(t.clone()) {
                    return Err(parse_err("items", format!("tuple {t:?} appears twice")));
                }
                qorder.push(t.clone());
            }
            StarItem::Point(w) => {
                if !scaffold.last_part().contains(w) {
                    return Err(parse_err("items", format!("{w} is not in the last part")));
                }
                if !seen_points.insert(*w) {
                    return Err(parse_err("items", format!("point {w} appears twice")));
                }
                points.push(*w);
            }
        }
    }
    if seen_tuples.len() != expected.len() {
        return Err(parse_err("items", "some Q-tuple is missing from the ranking"));
    }
    if points.len() != part_sizes[k] {
        return Err(parse_err("items", "some last-part point is missing from the ranking"));
    }
    if !points.windows(2).all(|w| w[0] < w[1]) {
        return Err(parse_err("items", "points do not appear in increasing order"));
    }
    let mut r_edges = BTreeSet::new();
    let mut pending: Vec<Vec<usize>> = Vec::new();
    for item in ranking {
        match item {
            StarItem::Tuple(t) => pending.push(t.clone()),
            StarItem::Point(w) => {
                for t in &pending {
                    r_edges.insert((t.clone(), *w));
                }
            }
        }
    }
    let doc = TkModel { k, part_sizes: part_sizes.to_vec(), qorder, r_edges };
    debug_assert!(validate_tk(&doc).map(|r| r.is_valid()).unwrap_or(false));
    Ok(doc)
}

/// Relations whose atoms enter a fingerprint, in encoding order.
const REL_EQ: u8 = 0;
const REL_PART: u8 = 1;
const REL_LT: u8 = 2;
const REL_TUPLE_LT: u8 = 3;
const REL_LINK: u8 = 4;

/// Canonical quantifier-free type of a tuple of elements over a sublanguage.
/// Two tuples get equal fingerprints iff they satisfy the same atomic
/// formulas, which makes the encoding invariant under any isomorphism.
pub fn qf_type(doc: &TkModel, tuple: &[usize], lang: QfLang) -> Result<QfTypeFingerprint> {
    doc.check_shape()?;
    let n = tuple.len();
    let size = doc.size();
    if tuple.iter().any(|&x| x >= size) {
        return Err(parse_err("tuple", "element out of range"));
    }
    if n.checked_pow(2 * doc.k as u32).map_or(true, |c| c > 1 << 20) {
        return Err(Error::Capacity(format!("fingerprint over {n} positions with k={}", doc.k)));
    }
    let mut atoms: Vec<Vec<u8>> = Vec::new();
    let mut push = |atoms: &mut Vec<Vec<u8>>, rel: u8, args: &[usize]| {
        let mut enc = vec![rel];
        for &a in args {
            enc.extend_from_slice(&(a as u32).to_le_bytes());
        }
        atoms.push(enc);
    };
    for i in 0..n {
        for j in 0..n {
            if tuple[i] == tuple[j] {
                push(&mut atoms, REL_EQ, &[i, j]);
            }
            if tuple[i] < tuple[j] {
                push(&mut atoms, REL_LT, &[i, j]);
            }
        }
        let part = doc.part_of(tuple[i]);
        let include_part = match lang {
            QfLang::TupleOrder => part < doc.k,
            _ => true,
        };
        if include_part {
            push(&mut atoms, REL_PART, &[part, i]);
        }
    }
    let with_tuple_order = matches!(lang, QfLang::Full | QfLang::NoLink | QfLang::TupleOrder);
    if with_tuple_order {
        for args in (0..2 * doc.k).map(|_| 0..n).multi_cartesian_product() {
            let left: Vec<usize> = args[..doc.k].iter().map(|&i| tuple[i]).collect();
            let right: Vec<usize> = args[doc.k..].iter().map(|&i| tuple[i]).collect();
            if let (Some(a), Some(b)) = (doc.q_rank(&left), doc.q_rank(&right)) {
                if a < b {
                    push(&mut atoms, REL_TUPLE_LT, &args);
                }
            }
        }
    }
    if matches!(lang, QfLang::Full) {
        for args in (0..=doc.k).map(|_| 0..n).multi_cartesian_product() {
            let t: Vec<usize> = args[..doc.k].iter().map(|&i| tuple[i]).collect();
            let w = tuple[args[doc.k]];
            if doc.is_q_tuple(&t) && doc.part_of(w) == doc.k && doc.has_edge(&t, w) {
                push(&mut atoms, REL_LINK, &args);
            }
        }
    }
    atoms.sort();
    let mut bytes = vec![match lang {
        QfLang::Full => 0u8,
        QfLang::NoLink => 1,
        QfLang::PartsOrder => 2,
        QfLang::TupleOrder => 3,
    }];
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    for a in atoms {
        bytes.extend_from_slice(&a);
    }
    Ok(QfTypeFingerprint { lang, bytes })
}

/// True iff `map` (element of `a` -> element of `c`) is an embedding:
/// injective, part-preserving, order-preserving, and preserving the tuple
/// order and link relation exactly.
pub fn is_embedding(a: &TkModel, c: &TkModel, map: &[usize]) -> bool {
    if a.k != c.k || map.len() != a.size() {
        return false;
    }
    let mut image = BTreeSet::new();
    for (x, &y) in map.iter().enumerate() {
        if y >= c.size() || !image.insert(y) || a.part_of(x) != c.part_of(y) {
            return false;
        }
    }
    for x in 0..a.size() {
        for y in 0..a.size() {
            if (x < y) != (map[x] < map[y]) {
                return false;
            }
        }
    }
    let tuples = a.q_tuples_lex();
    for s in &tuples {
        let si: Vec<usize> = s.iter().map(|&x| map[x]).collect();
        for t in &tuples {
            let ti: Vec<usize> = t.iter().map(|&x| map[x]).collect();
            let before_a = a.q_rank(s).unwrap() < a.q_rank(t).unwrap();
            let before_c = c.q_rank(&si).unwrap() < c.q_rank(&ti).unwrap();
            if before_a != before_c {
                return false;
            }
        }
        for w in a.last_part() {
            if a.has_edge(s, w) != c.has_edge(&si, map[w]) {
                return false;
            }
        }
    }
    true
}

/// All embeddings of `a` into `c`, lexicographic by image vector. Since maps
/// must be increasing within each part and parts map to parts, candidates are
/// products of per-part increasing injections.
pub fn find_embeddings(a: &TkModel, c: &TkModel) -> Result<Vec<Vec<usize>>> {
    for (name, m) in [("A", a), ("C", c)] {
        let report = validate_tk(m)?;
        if !report.is_valid() {
            return Err(Error::Invalid(format!("{name} fails validation")));
        }
    }
    if a.k != c.k {
        return Err(Error::ArityMismatch(format!("k = {} vs {}", a.k, c.k)));
    }
    let per_part: Vec<Vec<Vec<usize>>> = (0..=a.k)
        .map(|i| {
            c.part_elements(i)
                .combinations(a.part_sizes[i])
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    for choice in per_part.iter().map(|v| v.iter()).multi_cartesian_product() {
        let map: Vec<usize> = choice.iter().flat_map(|images| images.iter().copied()).collect();
        if is_embedding(a, c, &map) {
            found.push(map);
        }
    }
    Ok(found)
}

/// Automorphisms are embeddings of a model into itself; canonical numbering
/// makes every valid model rigid, but the check is shared with other classes.
pub fn is_rigid(a: &TkModel) -> Result<bool> {
    Ok(find_embeddings(a, a)?.len() == 1)
}

/// Iterator over every valid model with the given part sizes, exactly once.
/// A model corresponds to an interleaving of the tuple sequence (in any of
/// q! orders) with the point sequence (order fixed), so the count is
/// (q+m)!/m!.
pub fn enumerate_models(k: usize, part_sizes: &[usize]) -> Result<impl Iterator<Item = TkModel>> {
    let scaffold = TkModel {
        k,
        part_sizes: part_sizes.to_vec(),
        qorder: Vec::new(),
        r_edges: BTreeSet::new(),
    };
    scaffold.check_shape()?;
    let tuples = scaffold.q_tuples_lex();
    let q = tuples.len();
    let m = part_sizes[k];
    let points: Vec<usize> = scaffold.last_part().collect();
    let part_sizes = part_sizes.to_vec();
    let iter = tuples
        .into_iter()
        .permutations(q)
        .flat_map(move |perm| {
            let points = points.clone();
            let part_sizes = part_sizes.clone();
            (0..q + m).combinations(q).map(move |tuple_slots| {
                let slot_set: BTreeSet<usize> = tuple_slots.iter().copied().collect();
                let mut ti = 0;
                let mut pi = 0;
                let mut items = Vec::with_capacity(q + m);
                for slot in 0..q + m {
                    if slot_set.contains(&slot) {
                        items.push(StarItem::Tuple(perm[ti].clone()));
                        ti += 1;
                    } else {
                        items.push(StarItem::Point(points[pi]));
                        pi += 1;
                    }
                }
                from_star_order(k, &part_sizes, &items).expect("constructed ranking is well-formed")
            })
        });
    Ok(iter)
}

/// Closed-form count matching `enumerate_models`.
pub fn model_count(k: usize, part_sizes: &[usize]) -> u128 {
    let q: u128 = part_sizes[..k].iter().map(|&s| s as u128).product();
    let m = part_sizes[k] as u128;
    // (q+m)! / m!
    let mut acc: u128 = 1;
    let mut i = m + 1;
    while i <= q + m {
        acc *= i;
        i += 1;
    }
    acc
}

/// The link relation viewed as a partite hypergraph over part-local indices.
pub fn to_hypergraph(doc: &TkModel) -> crate::coding::PartiteHypergraph {
    let edges = doc
        .r_edges
        .iter()
        .map(|(t, w)| {
            let mut e: Vec<usize> =
                t.iter().enumerate().map(|(i, &x)| x - doc.part_start(i)).collect();
            e.push(w - doc.part_start(doc.k));
            e
        })
        .collect();
    crate::coding::PartiteHypergraph {
        k: doc.k,
        part_sizes: doc.part_sizes.clone(),
        edges,
    }
}

/// Scan for two tuples and two points linked in the crossing pattern that no
/// valid model can contain.
pub fn forbidden_configuration(doc: &TkModel) -> Option<(Vec<usize>, Vec<usize>, usize, usize)> {
    let tuples = doc.q_tuples_lex();
    for a in &tuples {
        for b in &tuples {
            for c in doc.last_part() {
                for d in doc.last_part() {
                    if doc.has_edge(a, c)
                        && doc.has_edge(b, d)
                        && !doc.has_edge(a, d)
                        && !doc.has_edge(b, c)
                    {
                        return Some((a.clone(), b.clone(), c, d));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn model(
        k: usize,
        sizes: &[usize],
        qorder: &[&[usize]],
        edges: &[(&[usize], usize)],
    ) -> TkModel {
        TkModel {
            k,
            part_sizes: sizes.to_vec(),
            qorder: qorder.iter().map(|t| t.to_vec()).collect(),
            r_edges: edges.iter().map(|(t, w)| (t.to_vec(), *w)).collect(),
        }
    }

    #[test]
    fn validate_examples() {
        let valid = model(2, &[1, 1, 1], &[&[0, 1]], &[]);
        assert!(validate_tk(&valid).unwrap().is_valid());

        let bad = model(2, &[1, 2, 2], &[&[0, 1], &[0, 2]], &[(&[0, 2], 3)]);
        let report = validate_tk(&bad).unwrap();
        assert_eq!(report.violated_axioms(), vec![5]);
        // The witness is the instantiation x=(0,1), y=(0,2), w=3, z=4.
        assert!(report.violations.iter().any(|v| v.detail.contains("[0, 1]") && v.detail.contains('4')));

        let upset = model(2, &[1, 1, 2], &[&[0, 1]], &[(&[0, 1], 2), (&[0, 1], 3)]);
        assert!(validate_tk(&upset).unwrap().is_valid());
    }

    #[test]
    fn validate_axiom3_and_4() {
        let bad_edge = model(2, &[1, 1, 2], &[&[0, 1]], &[(&[0, 1], 1)]);
        assert_eq!(validate_tk(&bad_edge).unwrap().violated_axioms(), vec![3]);

        let missing = model(2, &[1, 2, 1], &[&[0, 1]], &[]);
        assert_eq!(validate_tk(&missing).unwrap().violated_axioms(), vec![4]);

        let dup = model(2, &[1, 1, 1], &[&[0, 1], &[0, 1]], &[]);
        assert_eq!(validate_tk(&dup).unwrap().violated_axioms(), vec![4]);
    }

    #[test]
    fn star_order_examples() {
        let m1 = model(2, &[1, 1, 2], &[&[0, 1]], &[(&[0, 1], 3)]);
        assert_eq!(
            star_order(&m1).unwrap(),
            vec![StarItem::Point(2), StarItem::Tuple(vec![0, 1]), StarItem::Point(3)]
        );
        let m2 = model(2, &[1, 1, 2], &[&[0, 1]], &[(&[0, 1], 2), (&[0, 1], 3)]);
        assert_eq!(
            star_order(&m2).unwrap(),
            vec![StarItem::Tuple(vec![0, 1]), StarItem::Point(2), StarItem::Point(3)]
        );
        let m3 = model(2, &[1, 1, 1], &[&[0, 1]], &[]);
        assert_eq!(star_order(&m3).unwrap(), vec![StarItem::Point(2), StarItem::Tuple(vec![0, 1])]);
    }

    #[test]
    fn from_star_examples() {
        let ranking = vec![
            StarItem::Tuple(vec![0, 1]),
            StarItem::Tuple(vec![0, 2]),
            StarItem::Point(3),
        ];
        let m = from_star_order(2, &[1, 2, 1], &ranking).unwrap();
        assert_eq!(m.r_edges.len(), 2);
        assert!(m.has_edge(&[0, 1], 3) && m.has_edge(&[0, 2], 3));

        let ranking2 = vec![
            StarItem::Point(3),
            StarItem::Tuple(vec![0, 1]),
            StarItem::Tuple(vec![0, 2]),
        ];
        let m2 = from_star_order(2, &[1, 2, 1], &ranking2).unwrap();
        assert!(m2.r_edges.is_empty());

        // Round trips.
        for m in [&m, &m2] {
            let s = star_order(m).unwrap();
            assert_eq!(&from_star_order(2, &m.part_sizes, &s).unwrap(), m);
        }
    }

    #[test]
    fn from_star_rejects_bad_rankings() {
        let missing = vec![StarItem::Point(3)];
        assert!(from_star_order(2, &[1, 2, 1], &missing).is_err());
        let dup = vec![
            StarItem::Tuple(vec![0, 1]),
            StarItem::Tuple(vec![0, 1]),
            StarItem::Tuple(vec![0, 2]),
            StarItem::Point(3),
        ];
        assert!(from_star_order(2, &[1, 2, 1], &dup).is_err());
    }

    #[test]
    fn qf_type_examples() {
        let m = model(2, &[1, 1, 2], &[&[0, 1]], &[(&[0, 1], 3)]);
        let a = qf_type(&m, &[0, 1, 2], QfLang::PartsOrder).unwrap();
        let b = qf_type(&m, &[0, 1, 3], QfLang::PartsOrder).unwrap();
        assert_eq!(a, b);
        let a_full = qf_type(&m, &[0, 1, 2], QfLang::Full).unwrap();
        let b_full = qf_type(&m, &[0, 1, 3], QfLang::Full).unwrap();
        assert_ne!(a_full, b_full);
        assert_eq!(a_full, qf_type(&m, &[0, 1, 2], QfLang::Full).unwrap());
    }

    #[test]
    fn embeddings_examples() {
        let a = model(2, &[1, 1, 1], &[&[0, 1]], &[(&[0, 1], 2)]);
        let embs = find_embeddings(&a, &a).unwrap();
        assert_eq!(embs, vec![vec![0, 1, 2]]);

        let a2 = model(2, &[1, 1, 1], &[&[0, 1]], &[]);
        let c = model(2, &[1, 1, 2], &[&[0, 1]], &[(&[0, 1], 3)]);
        let embs2 = find_embeddings(&a2, &c).unwrap();
        // Exhaustive: only the map sending the last-part element to 2 works.
        assert_eq!(embs2, vec![vec![0, 1, 2]]);

        let a3 = model(2, &[1, 1, 1], &[&[0, 1]], &[(&[0, 1], 2)]);
        let c3 = model(2, &[1, 1, 1], &[&[0, 1]], &[]);
        assert!(find_embeddings(&a3, &c3).unwrap().is_empty());
    }

    #[test]
    fn enumeration_counts() {
        for (sizes, expected) in [
            (vec![1, 1, 2], 3u128),
            (vec![1, 2, 2], 12),
            (vec![2, 2, 2], 360),
        ] {
            assert_eq!(model_count(2, &sizes), expected);
            let models: Vec<TkModel> = enumerate_models(2, &sizes).unwrap().collect();
            assert_eq!(models.len() as u128, expected);
            let distinct: BTreeSet<&TkModel> = models.iter().collect();
            assert_eq!(distinct.len(), models.len());
            for m in &models {
                assert!(validate_tk(m).unwrap().is_valid());
            }
        }
    }

    #[test]
    fn forbidden_configuration_absent_in_valid_models() {
        for m in enumerate_models(2, &[1, 2, 2]).unwrap() {
            assert!(forbidden_configuration(&m).is_none());
        }
    }

    #[test]
    fn defined_order_from_link_rows() {
        // If some point separates two tuples' rows then the row-poorer tuple
        // is strictly later in the tuple order.
        for m in enumerate_models(2, &[1, 2, 2]).unwrap() {
            for (i, x) in m.qorder.iter().enumerate() {
                for y in &m.qorder[i + 1..] {
                    // x <_k y, so no z with R(y,z) and not R(x,z).
                    for z in m.last_part() {
                        assert!(!(m.has_edge(y, z) && !m.has_edge(x, z)));
                    }
                }
            }
        }
    }
}

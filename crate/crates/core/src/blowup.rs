//! Blow-up of an ordered base structure with a unary predicate into a
//! partite model (the predicate becomes a k-fold Cartesian product), its
//! inverse, constructive strong amalgamation, and seeded generic extension.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{parse_err, Error, Result};
use crate::tk::{from_star_order, is_embedding, star_order, validate_tk, StarItem, StarOrder, TkModel};

/// A finite linear order 0..n-1 with a distinguished subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseStructure {
    pub n: usize,
    pub u_set: BTreeSet<usize>,
}

impl BaseStructure {
    pub fn check_shape(&self) -> Result<()> {
        if self.u_set.iter().any(|&x| x >= self.n) {
            return Err(parse_err("u", "element out of range"));
        }
        Ok(())
    }
}

/// Recipe for a blow-up: the base, the first k part sizes, and a bijection
/// from the product tuples (in output element ids) onto the distinguished set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupSpec {
    pub base: BaseStructure,
    pub part_sizes: Vec<usize>,
    pub bijection: BTreeMap<Vec<usize>, usize>,
}

impl BlowupSpec {
    pub fn k(&self) -> usize {
        self.part_sizes.len()
    }

    fn output_sizes(&self) -> Vec<usize> {
        let mut sizes = self.part_sizes.clone();
        sizes.push(self.base.n - self.base.u_set.len());
        sizes
    }

    pub fn check_shape(&self) -> Result<()> {
        self.base.check_shape()?;
        if self.part_sizes.is_empty() {
            return Err(parse_err("part_sizes", "need at least one part"));
        }
        let q: usize = self.part_sizes.iter().product();
        if q != self.base.u_set.len() {
            return Err(Error::ArityMismatch(format!(
                "product of part sizes is {q} but the distinguished set has {} elements",
                self.base.u_set.len()
            )));
        }
        let scaffold = TkModel {
            k: self.k(),
            part_sizes: self.output_sizes(),
            qorder: Vec::new(),
            r_edges: BTreeSet::new(),
        };
        let expected: BTreeSet<Vec<usize>> = scaffold.q_tuples_lex().into_iter().collect();
        let mut images = BTreeSet::new();
        for (t, &u) in &self.bijection {
            if !expected.contains(t) {
                return Err(parse_err("f", format!("{t:?} is not a product tuple")));
            }
            if !self.base.u_set.contains(&u) {
                return Err(parse_err("f", format!("{u} is not in the distinguished set")));
            }
            if !images.insert(u) {
                return Err(parse_err("f", format!("base element {u} hit twice")));
            }
        }
        if self.bijection.len() != expected.len() {
            return Err(parse_err("f", "bijection does not cover every product tuple"));
        }
        Ok(())
    }
}

/// Build the partite model: tuples ordered by the base position of their
/// image, and a tuple linked to exactly the non-distinguished base elements
/// above its image.
pub fn blow_up(spec: &BlowupSpec) -> Result<TkModel> {
    spec.check_shape()?;
    let k = spec.k();
    let sizes = spec.output_sizes();
    let mut qorder: Vec<Vec<usize>> = spec.bijection.keys().cloned().collect();
    qorder.sort_by_key(|t| spec.bijection[t]);
    // Non-distinguished base elements, in base order, become the last part.
    let points: Vec<usize> =
        (0..spec.base.n).filter(|x| !spec.base.u_set.contains(x)).collect();
    let offset: usize = sizes[..k].iter().sum();
    let mut r_edges = BTreeSet::new();
    for (t, &u) in &spec.bijection {
        for (i, &b) in points.iter().enumerate() {
            if u < b {
                r_edges.insert((t.clone(), offset + i));
            }
        }
    }
    let model = TkModel { k, part_sizes: sizes, qorder, r_edges };
    let report = validate_tk(&model)?;
    if !report.is_valid() {
        return Err(Error::Internal("blow-up produced an invalid model".into()));
    }
    Ok(model)
}

/// Inverse of the blow-up: the base is the interleaved order on tuples and
/// last-part points, with the tuple positions distinguished.
pub fn recover_base(model: &TkModel) -> Result<(BlowupSpec, TkModel)> {
    let items = star_order(model)?;
    let mut u_set = BTreeSet::new();
    let mut bijection = BTreeMap::new();
    for (pos, item) in items.iter().enumerate() {
        if let StarItem::Tuple(t) = item {
            u_set.insert(pos);
            bijection.insert(t.clone(), pos);
        }
    }
    let spec = BlowupSpec {
        base: BaseStructure { n: items.len(), u_set },
        part_sizes: model.part_sizes[..model.k].to_vec(),
        bijection,
    };
    let rebuilt = blow_up(&spec)?;
    if &rebuilt != model {
        return Err(Error::Internal("recovered base does not reproduce the model".into()));
    }
    Ok((spec, rebuilt))
}

/// Where an element of the amalgam came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Shared,
    Left,
    Right,
}

/// Result of amalgamating two models over a common substructure.
#[derive(Debug, Clone)]
pub struct Amalgam {
    pub model: TkModel,
    /// Element maps of the two factors into the amalgam.
    pub left_map: Vec<usize>,
    pub right_map: Vec<usize>,
}

/// Strong amalgamation: merge the two models over the shared substructure,
/// never identifying anything outside it. The part orders merge left-first
/// inside each shared gap; the last part follows the merged interleaved
/// order; product tuples mixing strictly-left and strictly-right coordinates
/// come last in the tuple order with empty link rows.
pub fn amalgamate(
    d: &TkModel,
    m: &TkModel,
    n: &TkModel,
    emb1: &[usize],
    emb2: &[usize],
) -> Result<Amalgam> {
    for (name, x) in [("D", d), ("M", m), ("N", n)] {
        let report = validate_tk(x)?;
        if !report.is_valid() {
            return Err(Error::Invalid(format!("{name} fails validation")));
        }
    }
    if d.k != m.k || d.k != n.k {
        return Err(Error::ArityMismatch("arity parameters differ".into()));
    }
    if !is_embedding(d, m, emb1) {
        return Err(Error::NotEmbedding("emb1 does not embed D into M".into()));
    }
    if !is_embedding(d, n, emb2) {
        return Err(Error::NotEmbedding("emb2 does not embed D into N".into()));
    }
    let k = d.k;
    let in_left: Vec<Option<usize>> = inverse_partial(emb1, m.size());
    let in_right: Vec<Option<usize>> = inverse_partial(emb2, n.size());

    // Merge each of the first k parts over the shared subsequence. Entries
    // are (side, element id of that side); shared entries carry the M id.
    let mut provenance: Vec<Vec<(Side, usize)>> = Vec::with_capacity(k + 1);
    for i in 0..k {
        let left: Vec<usize> = m.part_elements(i).collect();
        let right: Vec<usize> = n.part_elements(i).collect();
        let merged = merge_sequences(&left, &right, |&x| in_left[x], |&y| in_right[y]);
        provenance.push(
            merged
                .into_iter()
                .map(|(side, idx)| match side {
                    Side::Right => (side, right[idx]),
                    _ => (side, left[idx]),
                })
                .collect(),
        );
    }

    // Merge the interleaved orders over the shared one to fix both the last
    // part's order and the link pattern of unmixed tuples.
    let star_m = star_order(m)?;
    let star_n = star_order(n)?;
    let item_left = |item: &StarItem| -> Option<StarItem> {
        match item {
            StarItem::Point(w) => in_left[*w].map(StarItem::Point),
            StarItem::Tuple(t) => {
                let back: Option<Vec<usize>> = t.iter().map(|&x| in_left[x]).collect();
                back.map(StarItem::Tuple)
            }
        }
    };
    let item_right = |item: &StarItem| -> Option<StarItem> {
        match item {
            StarItem::Point(w) => in_right[*w].map(StarItem::Point),
            StarItem::Tuple(t) => {
                let back: Option<Vec<usize>> = t.iter().map(|&y| in_right[y]).collect();
                back.map(StarItem::Tuple)
            }
        }
    };
    let merged_star = merge_sequences(&star_m, &star_n, item_left, item_right);
    let last_points: Vec<(Side, usize)> = merged_star
        .iter()
        .filter_map(|(side, idx)| {
            let item = match side {
                Side::Left | Side::Shared => &star_m[*idx],
                Side::Right => &star_n[*idx],
            };
            match item {
                StarItem::Point(w) => Some((*side, *w)),
                StarItem::Tuple(_) => None,
            }
        })
        .collect();
    provenance.push(last_points);

    // Global ids: contiguous blocks in merged part order.
    let mut sizes = Vec::with_capacity(k + 1);
    let mut left_map = vec![usize::MAX; m.size()];
    let mut right_map = vec![usize::MAX; n.size()];
    let mut next = 0usize;
    for part in &provenance {
        sizes.push(part.len());
        for &(side, elt) in part {
            match side {
                Side::Shared => {
                    let d_elt = in_left[elt].expect("shared element comes from D");
                    left_map[elt] = next;
                    right_map[emb2[d_elt]] = next;
                }
                Side::Left => left_map[elt] = next,
                Side::Right => right_map[elt] = next,
            }
            next += 1;
        }
    }

    // Tuple order: unmixed tuples by merged-star position, mixed tuples last
    // in lexicographic order.
    let mut items: StarOrder = Vec::new();
    for (side, idx) in &merged_star {
        let item = match side {
            Side::Left | Side::Shared => &star_m[*idx],
            Side::Right => &star_n[*idx],
        };
        let map = match side {
            Side::Left | Side::Shared => &left_map,
            Side::Right => &right_map,
        };
        items.push(match item {
            StarItem::Point(w) => StarItem::Point(map[*w]),
            StarItem::Tuple(t) => StarItem::Tuple(t.iter().map(|&x| map[x]).collect()),
        });
    }
    let scaffold = TkModel { k, part_sizes: sizes.clone(), qorder: Vec::new(), r_edges: BTreeSet::new() };
    let placed: BTreeSet<Vec<usize>> = items
        .iter()
        .filter_map(|item| match item {
            StarItem::Tuple(t) => Some(t.clone()),
            StarItem::Point(_) => None,
        })
        .collect();
    for t in scaffold.q_tuples_lex() {
        if !placed.contains(&t) {
            items.push(StarItem::Tuple(t));
        }
    }
    let model = from_star_order(k, &sizes, &items)?;
    if !is_embedding(m, &model, &left_map) || !is_embedding(n, &model, &right_map) {
        return Err(Error::Internal("amalgam factor maps are not embeddings".into()));
    }
    Ok(Amalgam { model, left_map, right_map })
}

fn inverse_partial(map: &[usize], codomain: usize) -> Vec<Option<usize>> {
    let mut inv = vec![None; codomain];
    for (d, &x) in map.iter().enumerate() {
        inv[x] = Some(d);
    }
    inv
}

/// Merge two sequences sharing a common subsequence (detected through the
/// given projections): inside every shared gap the left segment precedes the
/// right segment.
fn merge_sequences<T: Clone, F, G>(xs: &[T], ys: &[T], to_shared_x: F, to_shared_y: G) -> Vec<(Side, usize)>
where
    F: Fn(&T) -> Option<StarProj>,
    G: Fn(&T) -> Option<StarProj>,
{
    let mut out = Vec::new();
    let mut xi = 0;
    let mut yi = 0;
    loop {
        let mut lsegment = Vec::new();
        while xi < xs.len() && to_shared_x(&xs[xi]).is_none() {
            lsegment.push((Side::Left, xi));
            xi += 1;
        }
        let mut rsegment = Vec::new();
        while yi < ys.len() && to_shared_y(&ys[yi]).is_none() {
            rsegment.push((Side::Right, yi));
            yi += 1;
        }
        out.extend(lsegment);
        out.extend(rsegment);
        if xi == xs.len() && yi == ys.len() {
            break;
        }
        debug_assert!(
            xi < xs.len() && yi < ys.len(),
            "shared subsequences of both inputs have equal length"
        );
        out.push((Side::Shared, xi));
        xi += 1;
        yi += 1;
    }
    out
}

/// Anything that projects to a shared identity; only existence matters.
type StarProj = ();

trait ToProj {
    fn proj(self) -> Option<StarProj>;
}

impl<T> ToProj for Option<T> {
    fn proj(self) -> Option<StarProj> {
        self.map(|_| ())
    }
}

/// Seeded growth of a model: new elements are appended within each part, new
/// last-part points spread across the gaps after the last old point, and new
/// tuples are inserted at evenly spread cuts (position chosen by the seeded
/// generator inside each cut region). Returns the grown model and the old-id
/// to new-id map.
pub fn generic_extend(s: &TkModel, target_sizes: &[usize], seed: u64) -> Result<(TkModel, Vec<usize>)> {
    let report = validate_tk(s)?;
    if !report.is_valid() {
        return Err(Error::Invalid("input fails validation".into()));
    }
    if target_sizes.len() != s.k + 1 {
        return Err(parse_err("target_sizes", format!("expected {} entries", s.k + 1)));
    }
    if target_sizes.iter().zip(&s.part_sizes).any(|(&t, &c)| t < c) {
        return Err(Error::Capacity("target sizes must dominate current sizes".into()));
    }
    let k = s.k;
    let grown = TkModel {
        k,
        part_sizes: target_sizes.to_vec(),
        qorder: Vec::new(),
        r_edges: BTreeSet::new(),
    };
    // Old elements keep their rank within each part.
    let mut renumber = vec![0usize; s.size()];
    for i in 0..=k {
        for (offset, old) in s.part_elements(i).enumerate() {
            renumber[old] = grown.part_start(i) + offset;
        }
    }
    let mut items: StarOrder = star_order(s)?
        .into_iter()
        .map(|item| match item {
            StarItem::Point(w) => StarItem::Point(renumber[w]),
            StarItem::Tuple(t) => StarItem::Tuple(t.iter().map(|&x| renumber[x]).collect()),
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m_old = s.part_sizes[k];
    let m_new = target_sizes[k] - m_old;
    if m_new > 0 {
        // Positions after the last old point; gaps are delimited by the
        // trailing tuples.
        let suffix_start = items
            .iter()
            .rposition(|item| matches!(item, StarItem::Point(_)))
            .map_or(0, |p| p + 1);
        let gap_count = items.len() - suffix_start + 1;
        let first_new = grown.part_start(k) + m_old;
        // Earlier gaps first, as even as the counts allow.
        let mut insert_at: Vec<usize> = (0..m_new).map(|j| j * gap_count / m_new).collect();
        insert_at.reverse();
        for (j, gap) in insert_at.into_iter().enumerate() {
            let id = first_new + (m_new - 1 - j);
            items.insert(suffix_start + gap, StarItem::Point(id));
        }
    }

    let old_tuples: BTreeSet<Vec<usize>> =
        s.qorder.iter().map(|t| t.iter().map(|&x| renumber[x]).collect()).collect();
    let new_tuples: Vec<Vec<usize>> =
        grown.q_tuples_lex().into_iter().filter(|t| !old_tuples.contains(t)).collect();
    let n_new = new_tuples.len();
    for (j, t) in new_tuples.into_iter().enumerate() {
        // Cut = number of old points below; covers every cut when capacity
        // allows.
        let cut = j * (m_old + 1) / n_new.max(1);
        let old_point_ids: BTreeSet<usize> =
            (grown.part_start(k)..grown.part_start(k) + m_old).collect();
        let mut region_start = 0;
        let mut seen = 0;
        for (pos, item) in items.iter().enumerate() {
            if seen == cut {
                region_start = pos;
                break;
            }
            if let StarItem::Point(w) = item {
                if old_point_ids.contains(w) {
                    seen += 1;
                }
            }
            region_start = pos + 1;
        }
        if seen < cut {
            region_start = items.len();
        }
        let mut region_end = region_start;
        while region_end < items.len() {
            if let StarItem::Point(w) = &items[region_end] {
                if old_point_ids.contains(w) {
                    break;
                }
            }
            region_end += 1;
        }
        let pos = rng.gen_range(region_start..=region_end);
        items.insert(pos, StarItem::Tuple(t));
    }

    let model = from_star_order(k, target_sizes, &items)?;
    debug_assert!(is_embedding(s, &model, &renumber));
    Ok((model, renumber))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tk::enumerate_models;

    fn base(n: usize, u: &[usize]) -> BaseStructure {
        BaseStructure { n, u_set: u.iter().copied().collect() }
    }

    #[test]
    fn blow_up_worked_example() {
        // Base a<b<c with U = {a,b}; parts (1,2); tuples map in order.
        let spec = BlowupSpec {
            base: base(3, &[0, 1]),
            part_sizes: vec![1, 2],
            bijection: [(vec![0, 1], 0), (vec![0, 2], 1)].into_iter().collect(),
        };
        let m = blow_up(&spec).unwrap();
        assert_eq!(m.part_sizes, vec![1, 2, 1]);
        assert_eq!(m.qorder, vec![vec![0, 1], vec![0, 2]]);
        assert!(m.has_edge(&[0, 1], 3) && m.has_edge(&[0, 2], 3));

        // Swapping the bijection transports the tuple order.
        let swapped = BlowupSpec {
            bijection: [(vec![0, 1], 1), (vec![0, 2], 0)].into_iter().collect(),
            ..spec
        };
        let m2 = blow_up(&swapped).unwrap();
        assert_eq!(m2.qorder, vec![vec![0, 2], vec![0, 1]]);
    }

    #[test]
    fn blow_up_degenerate_empty_product() {
        let spec = BlowupSpec {
            base: base(2, &[]),
            part_sizes: vec![0, 3],
            bijection: BTreeMap::new(),
        };
        let m = blow_up(&spec).unwrap();
        assert_eq!(m.q_count(), 0);
        assert!(m.r_edges.is_empty());
        assert_eq!(m.part_sizes, vec![0, 3, 2]);
    }

    #[test]
    fn recover_round_trips() {
        let spec = BlowupSpec {
            base: base(3, &[0, 1]),
            part_sizes: vec![1, 2],
            bijection: [(vec![0, 1], 0), (vec![0, 2], 1)].into_iter().collect(),
        };
        let m = blow_up(&spec).unwrap();
        let (rec, rebuilt) = recover_base(&m).unwrap();
        assert_eq!(rebuilt, m);
        assert_eq!(rec.base.n, 3);

        // An unlinked single tuple sits after the point in the base order.
        let m2 = crate::tk::tests::model(2, &[1, 1, 1], &[&[0, 1]], &[]);
        let (rec2, _) = recover_base(&m2).unwrap();
        assert_eq!(rec2.base.u_set, [1].into_iter().collect());

        let m3 = crate::tk::tests::model(2, &[1, 1, 1], &[&[0, 1]], &[(&[0, 1], 2)]);
        let (rec3, _) = recover_base(&m3).unwrap();
        assert_eq!(rec3.base.u_set, [0].into_iter().collect());
    }

    #[test]
    fn joint_embedding_of_two_singleton_models() {
        let d = crate::tk::tests::model(2, &[0, 0, 0], &[], &[]);
        let m = crate::tk::tests::model(2, &[1, 1, 1], &[&[0, 1]], &[]);
        let out = amalgamate(&d, &m, &m, &[], &[]).unwrap();
        assert_eq!(out.model.part_sizes[..2], [2, 2]);
        assert!(validate_tk(&out.model).unwrap().is_valid());
        assert!(is_embedding(&m, &out.model, &out.left_map));
        assert!(is_embedding(&m, &out.model, &out.right_map));
        // Strong: non-shared images disjoint.
        let li: BTreeSet<usize> = out.left_map.iter().copied().collect();
        let ri: BTreeSet<usize> = out.right_map.iter().copied().collect();
        assert!(li.is_disjoint(&ri));
    }

    #[test]
    fn absorbing_amalgamation() {
        let m = crate::tk::tests::model(2, &[1, 1, 1], &[&[0, 1]], &[(&[0, 1], 2)]);
        let idmap: Vec<usize> = (0..3).collect();
        let out = amalgamate(&m, &m, &m, &idmap, &idmap).unwrap();
        assert_eq!(out.model, m);
        assert_eq!(out.left_map, out.right_map);
    }

    #[test]
    fn amalgamation_keeps_both_thresholds() {
        // D is a single tuple with one point; M and N extend it with a second
        // point on opposite sides of the tuple.
        let d = crate::tk::tests::model(2, &[1, 1, 1], &[&[0, 1]], &[(&[0, 1], 2)]);
        let m = crate::tk::tests::model(2, &[1, 1, 2], &[&[0, 1]], &[(&[0, 1], 2), (&[0, 1], 3)]);
        let n = crate::tk::tests::model(2, &[1, 1, 2], &[&[0, 1]], &[(&[0, 1], 3)]);
        let e1 = vec![0, 1, 2];
        let e2 = vec![0, 1, 3];
        let out = amalgamate(&d, &m, &n, &e1, &e2).unwrap();
        assert!(validate_tk(&out.model).unwrap().is_valid());
        assert!(is_embedding(&m, &out.model, &out.left_map));
        assert!(is_embedding(&n, &out.model, &out.right_map));
        assert_eq!(out.left_map[2], out.right_map[3]);
    }

    #[test]
    fn amalgamate_rejects_non_embeddings() {
        let d = crate::tk::tests::model(2, &[1, 1, 1], &[&[0, 1]], &[(&[0, 1], 2)]);
        let n = crate::tk::tests::model(2, &[1, 1, 1], &[&[0, 1]], &[]);
        let id = vec![0, 1, 2];
        assert!(matches!(
            amalgamate(&d, &n, &n, &id, &id),
            Err(Error::NotEmbedding(_))
        ));
    }

    #[test]
    fn generic_extend_examples() {
        let s = crate::tk::tests::model(2, &[1, 1, 1], &[&[0, 1]], &[]);
        let (grown, renumber) = generic_extend(&s, &[1, 1, 3], 7).unwrap();
        assert!(validate_tk(&grown).unwrap().is_valid());
        assert!(is_embedding(&s, &grown, &renumber));
        // New points appear on both sides of the tuple in the interleaved order.
        let star = star_order(&grown).unwrap();
        let tuple_pos = star.iter().position(|i| matches!(i, StarItem::Tuple(_))).unwrap();
        let new_before = star[..tuple_pos]
            .iter()
            .any(|i| matches!(i, StarItem::Point(w) if *w > renumber[2]));
        let new_after = star[tuple_pos..]
            .iter()
            .any(|i| matches!(i, StarItem::Point(w) if *w > renumber[2]));
        assert!(new_before && new_after);

        // Identity growth returns the model itself.
        let (same, id) = generic_extend(&s, &[1, 1, 1], 0).unwrap();
        assert_eq!(same, s);
        assert_eq!(id, vec![0, 1, 2]);

        // Determinism.
        let again = generic_extend(&s, &[1, 1, 3], 7).unwrap();
        assert_eq!(again.0, grown);
    }

    #[test]
    fn generic_extend_covers_cuts() {
        let s = crate::tk::tests::model(2, &[1, 1, 2], &[&[0, 1]], &[(&[0, 1], 3)]);
        let (grown, _) = generic_extend(&s, &[2, 2, 2], 3).unwrap();
        // 3 new tuples, 3 possible cuts over the old points: all covered.
        let mut cuts = BTreeSet::new();
        for t in &grown.qorder {
            let cut = (grown.part_start(2)..grown.part_start(2) + 2)
                .filter(|&w| !grown.has_edge(t, w))
                .count();
            cuts.insert(cut);
        }
        assert_eq!(cuts, (0..=2).collect());
    }

    #[test]
    fn blow_up_always_validates_small_bases() {
        use itertools::Itertools;
        for n in 1..=4usize {
            for u_bits in 0..1u32 << n {
                let u: BTreeSet<usize> = (0..n).filter(|i| u_bits >> i & 1 == 1).collect();
                let usz = u.len();
                // k = 2 factorizations of |U|.
                for s1 in 1..=usz.max(1) {
                    if usz == 0 || usz % s1 != 0 {
                        continue;
                    }
                    let s2 = usz / s1;
                    let scaffold = TkModel {
                        k: 2,
                        part_sizes: vec![s1, s2, n - usz],
                        qorder: Vec::new(),
                        r_edges: BTreeSet::new(),
                    };
                    let tuples = scaffold.q_tuples_lex();
                    for perm in u.iter().copied().permutations(usz).take(6) {
                        let spec = BlowupSpec {
                            base: BaseStructure { n, u_set: u.clone() },
                            part_sizes: vec![s1, s2],
                            bijection: tuples.iter().cloned().zip(perm).collect(),
                        };
                        let m = blow_up(&spec).unwrap();
                        assert!(validate_tk(&m).unwrap().is_valid());
                        let (_, rebuilt) = recover_base(&m).unwrap();
                        assert_eq!(rebuilt, m);
                    }
                }
            }
        }
    }

    #[test]
    fn recover_then_blow_up_is_identity_small() {
        for sizes in [[1, 1, 2], [1, 2, 1], [2, 1, 2]] {
            for m in enumerate_models(2, &sizes).unwrap() {
                let (_, rebuilt) = recover_base(&m).unwrap();
                assert_eq!(rebuilt, m);
            }
        }
    }
}

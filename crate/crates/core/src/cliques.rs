//! Maximal cliques of H(G) and the cliques built from shared letter overlaps.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::bits::{ones, BitSet};
use crate::boolean::binomial;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hgraph::{are_exclusive, events_of_stabilizer, EventGraph};
use crate::pauli::{PauliOperator, StabilizerGroup};

/// Largest vertex count for full Bron–Kerbosch enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 128;

/// All maximal cliques, each sorted, in discovery order.
pub fn maximal_cliques(h: &EventGraph) -> Result<Vec<Vec<usize>>> {
    let v = h.vertex_count();
    if v > MAX_ENUMERATION_VERTICES {
        return Err(Error::Capability {
            what: "maximal clique enumeration vertex count",
            got: v,
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(h, &mut r, BitSet::full(v), BitSet::new(v), &mut out);
    Ok(out)
}

fn bron_kerbosch(
    h: &EventGraph,
    r: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| h.row(u).intersection_count(&p))
        .expect("p is nonempty");
    let mut branch = p.clone();
    branch.difference_with(h.row(pivot));
    for u in branch.iter() {
        r.push(u);
        bron_kerbosch(
            h,
            r,
            p.intersection(h.row(u)),
            x.intersection(h.row(u)),
            out,
        );
        r.pop();
        p.remove(u);
        x.insert(u);
    }
}

pub fn is_clique(h: &EventGraph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(a, &u)| set[a + 1..].iter().all(|&w| h.adjacent(u, w)))
}

/// True when no outside vertex is adjacent to every member of the clique.
pub fn is_maximal_clique(h: &EventGraph, set: &[usize]) -> bool {
    let mut common = BitSet::full(h.vertex_count());
    for &u in set {
        common.intersect_with(h.row(u));
    }
    common.is_empty()
}

/// Signed words sharing one identical non-identity letter at every overlap position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapFamily {
    pub members: Vec<PauliOperator>,
    pub overlap_positions: u64,
    pub mu: usize,
    /// For families drawn from a stabilizer group: whether no further element
    /// agrees on all overlap positions.
    pub maximal: Option<bool>,
}

fn agree_everywhere(members: &[PauliOperator]) -> u64 {
    let first = &members[0];
    members[1..].iter().fold(first.support(), |acc, s| {
        acc & s.support() & !((s.x_mask() ^ first.x_mask()) | (s.z_mask() ^ first.z_mask()))
    })
}

impl OverlapFamily {
    pub fn new(members: Vec<PauliOperator>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::InvalidPartition("empty overlap family".into()));
        };
        if let Some(s) = members.iter().find(|s| s.n() != first.n()) {
            return Err(Error::SizeMismatch {
                left: first.n(),
                right: s.n(),
            });
        }
        let overlap_positions = agree_everywhere(&members);
        if overlap_positions == 0 {
            return Err(Error::InvalidPartition("members share no letter".into()));
        }
        Ok(Self {
            mu: overlap_positions.count_ones() as usize,
            members,
            overlap_positions,
            maximal: None,
        })
    }

    /// Family of group elements by index, with the maximality flag filled in.
    pub fn from_group(group: &StabilizerGroup, indices: &[usize]) -> Result<Self> {
        let members: Vec<PauliOperator> = indices
            .iter()
            .map(|&i| {
                group
                    .elements()
                    .get(i)
                    .cloned()
                    .ok_or(Error::VertexOutOfRange {
                        vertex: i,
                        n: group.len(),
                    })
            })
            .collect::<Result<_>>()?;
        let mut family = Self::new(members)?;
        let ov = family.overlap_positions;
        let extendable = group.elements().iter().enumerate().any(|(i, s)| {
            !indices.contains(&i) && agree_everywhere(&[family.members[0], *s]) & ov == ov
        });
        family.maximal = Some(!extendable);
        Ok(family)
    }

    /// All sign patterns on the overlap positions, as outcome masks, in counting order.
    pub fn patterns(&self) -> Vec<u64> {
        let pos: Vec<usize> = ones(self.overlap_positions).collect();
        (0u64..1 << self.mu)
            .map(|c| {
                pos.iter()
                    .enumerate()
                    .filter(|&(t, _)| c >> (self.mu - 1 - t) & 1 == 1)
                    .fold(0, |m, (_, &p)| m | 1 << p)
            })
            .collect()
    }

    /// Parses a pattern such as `x-zy-` written over the overlap letters.
    pub fn parse_pattern(&self, text: &str) -> Result<u64> {
        let pos: Vec<usize> = ones(self.overlap_positions).collect();
        let mut mask = 0u64;
        let mut seen = 0;
        for (i, c) in text.chars().enumerate() {
            match c {
                'x' | 'y' | 'z' => {
                    let Some(&k) = pos.get(seen) else {
                        return Err(Error::Parse {
                            position: i,
                            message: "pattern longer than the overlap".into(),
                        });
                    };
                    if self.members[0].letter(k).as_char() != c.to_ascii_uppercase() {
                        return Err(Error::Parse {
                            position: i,
                            message: format!("overlap letter at position {} differs", k + 1),
                        });
                    }
                    seen += 1;
                }
                '-' | '\u{332}' if seen > 0 => mask |= 1 << pos[seen - 1],
                other => {
                    return Err(Error::Parse {
                        position: i,
                        message: format!("unexpected character {other:?} in pattern"),
                    })
                }
            }
        }
        if seen != pos.len() {
            return Err(Error::Parse {
                position: text.len(),
                message: "pattern shorter than the overlap".into(),
            });
        }
        Ok(mask)
    }
}

/// Ordered shares `a_j ≥ 1` of the 2^μ overlap patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapPartition {
    pub shares: Vec<usize>,
    /// `b_j`: shares of the members before `j`.
    pub cumulative: Vec<usize>,
}

impl OverlapPartition {
    pub fn new(shares: Vec<usize>, mu: usize) -> Result<Self> {
        if shares.contains(&0) {
            return Err(Error::InvalidPartition(
                "every share must be at least 1".into(),
            ));
        }
        if shares.iter().sum::<usize>() != 1 << mu {
            return Err(Error::InvalidPartition(format!(
                "shares {shares:?} do not sum to 2^{mu}"
            )));
        }
        let cumulative = shares
            .iter()
            .scan(0, |acc, &a| {
                let b = *acc;
                *acc += a;
                Some(b)
            })
            .collect();
        Ok(Self { shares, cumulative })
    }
}

/// `2^(−μ−1) Σ a_j 2^(w_j)`.
pub fn predicted_size(family: &OverlapFamily, partition: &OverlapPartition) -> Ratio<i128> {
    let total: i128 = family
        .members
        .iter()
        .zip(&partition.shares)
        .map(|(s, &a)| a as i128 * (1i128 << s.weight()))
        .sum();
    Ratio::new(total, 1i128 << (family.mu + 1))
}

/// Events `(member, outcome mask)` of the clique where member `j` takes the
/// overlap patterns `assignment[j]` and every sign-consistent completion.
pub fn clique_from_partition(
    family: &OverlapFamily,
    partition: &OverlapPartition,
    assignment: &[Vec<u64>],
) -> Result<Vec<(usize, u64)>> {
    let m = family.members.len();
    if partition.shares.len() != m || assignment.len() != m {
        return Err(Error::InvalidPartition(format!(
            "{m} members but {} shares and {} pattern lists",
            partition.shares.len(),
            assignment.len()
        )));
    }
    let mut owner = BTreeMap::new();
    for (j, pats) in assignment.iter().enumerate() {
        if pats.len() != partition.shares[j] {
            return Err(Error::InvalidPartition(format!(
                "member {j} has {} patterns, share is {}",
                pats.len(),
                partition.shares[j]
            )));
        }
        for &p in pats {
            if p & !family.overlap_positions != 0 {
                return Err(Error::InvalidPartition(format!(
                    "pattern {p:#b} leaves the overlap"
                )));
            }
            if owner.insert(p, j).is_some() {
                return Err(Error::InvalidPartition(format!(
                    "pattern {p:#b} assigned twice"
                )));
            }
        }
    }
    if owner.len() != 1 << family.mu {
        return Err(Error::InvalidPartition(
            "assignment does not cover every pattern".into(),
        ));
    }
    let mut clique = Vec::new();
    for (j, s) in family.members.iter().enumerate() {
        for out in events_of_stabilizer(s) {
            if owner.get(&(out & family.overlap_positions)) == Some(&j) {
                clique.push((j, out));
            }
        }
    }
    for (a, &(i, oi)) in clique.iter().enumerate() {
        for &(j, oj) in &clique[a + 1..] {
            if !are_exclusive(&family.members[i], oi, &family.members[j], oj) {
                return Err(Error::Internal(format!(
                    "constructed events {oi:#b} and {oj:#b} are not exclusive"
                )));
            }
        }
    }
    Ok(clique)
}

/// `Π_j C(2^μ − b_j, a_j)`: the number of pattern assignments realising `partition`.
pub fn count_cliques_for(family: &OverlapFamily, partition: &OverlapPartition) -> u128 {
    count_assignments(family.mu, partition)
}

pub fn count_assignments(mu: usize, partition: &OverlapPartition) -> u128 {
    partition
        .shares
        .iter()
        .zip(&partition.cumulative)
        .map(|(&a, &b)| binomial((1 << mu) - b, a))
        .product()
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueEnumeration {
    pub count: usize,
    pub min_size: usize,
    pub max_size: usize,
    /// `(size, number of maximal cliques)`.
    pub size_counts: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueBoundsReport {
    pub graph: String,
    pub n: usize,
    pub d_h: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub enumeration: Option<CliqueEnumeration>,
    /// Rendered events of a maximal clique of each extreme size, when found.
    pub min_witness: Option<Vec<String>>,
    pub max_witness: Option<Vec<String>>,
    /// Minimum-weight stabilizers whose event clique is not maximal.
    pub non_maximal_min_weight: Vec<String>,
    pub within_bounds: bool,
    pub both_witnessed: bool,
}

impl CliqueBoundsReport {
    pub fn ok(&self) -> bool {
        self.within_bounds && self.both_witnessed
    }
}

/// Checks maximal-clique sizes against [2^(d−1), 2^(n−1)], enumerating when
/// H is small and always building per-stabilizer witnesses.
pub fn clique_bounds_check(graph: &Graph) -> Result<CliqueBoundsReport> {
    let h = EventGraph::build(graph)?;
    let group = h.group();
    let d_h = group.min_distance();
    let n = graph.n();
    let (lower, upper) = (1usize << (d_h - 1), 1usize << (n - 1));
    let render = |set: &[usize]| -> Vec<String> {
        set.iter()
            .map(|&v| h.render(v, crate::hgraph::RenderStyle::Plain))
            .collect()
    };
    let mut non_maximal = Vec::new();
    let mut min_witness = None;
    let mut max_witness = None;
    for idx in 0..group.len() {
        let s = &group.elements()[idx];
        let clique: Vec<usize> = h.clique(idx).collect();
        let maximal = is_maximal_clique(&h, &clique);
        if s.weight() == d_h {
            if maximal {
                min_witness.get_or_insert_with(|| render(&clique));
            } else {
                non_maximal.push(s.to_string());
            }
        }
        if s.weight() == n && maximal {
            max_witness.get_or_insert_with(|| render(&clique));
        }
    }
    let enumeration = if h.vertex_count() <= MAX_ENUMERATION_VERTICES {
        let all = maximal_cliques(&h)?;
        let mut counts = BTreeMap::new();
        for c in &all {
            *counts.entry(c.len()).or_insert(0usize) += 1;
        }
        if min_witness.is_none() {
            min_witness = all.iter().find(|c| c.len() == lower).map(|c| render(c));
        }
        Some(CliqueEnumeration {
            count: all.len(),
            min_size: *counts.keys().next().unwrap_or(&0),
            max_size: *counts.keys().last().unwrap_or(&0),
            size_counts: counts.into_iter().collect(),
        })
    } else {
        None
    };
    let within_bounds = enumeration
        .as_ref()
        .is_none_or(|e| e.min_size >= lower && e.max_size <= upper);
    Ok(CliqueBoundsReport {
        graph: graph.to_edge_list(),
        n,
        d_h,
        lower_bound: lower,
        upper_bound: upper,
        both_witnessed: min_witness.is_some() && max_witness.is_some(),
        enumeration,
        min_witness,
        max_witness,
        non_maximal_min_weight: non_maximal,
        within_bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgraph::{parse_event, render_event, RenderStyle};

    fn g(s: &str) -> Graph {
        Graph::parse(s).unwrap()
    }

    fn ops(words: &[&str]) -> Vec<PauliOperator> {
        words
            .iter()
            .map(|w| PauliOperator::parse(w).unwrap())
            .collect()
    }

    fn rendered(family: &OverlapFamily, clique: &[(usize, u64)]) -> Vec<String> {
        let mut out: Vec<String> = clique
            .iter()
            .map(|&(j, o)| render_event(&family.members[j], o, RenderStyle::Plain))
            .collect();
        out.sort();
        out
    }

    fn sorted(words: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = words
            .iter()
            .map(|w| {
                let (op, o) = parse_event(w).unwrap();
                render_event(&op, o, RenderStyle::Plain)
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn small_enumerations() {
        let k2 = EventGraph::build(&g("12")).unwrap();
        let all = maximal_cliques(&k2).unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|c| c.len() == 2));
        let p3 = EventGraph::build(&g("12,23")).unwrap();
        let all = maximal_cliques(&p3).unwrap();
        assert!(all
            .iter()
            .all(|c| is_clique(&p3, c) && is_maximal_clique(&p3, c)));
        assert_eq!(all.iter().map(Vec::len).min(), Some(2));
        assert_eq!(all.iter().map(Vec::len).max(), Some(4));
    }

    #[test]
    fn eleven_clique() {
        let family = OverlapFamily::new(ops(&["IXZYZ", "-YXZYY"])).unwrap();
        assert_eq!((family.overlap_positions, family.mu), (0b01110, 3));
        let pats = |list: &[&str]| -> Vec<u64> {
            list.iter()
                .map(|p| family.parse_pattern(p).unwrap())
                .collect()
        };
        let assignment = vec![
            pats(&["xzy", "x-zy-", "x-zy", "xz-y-", "x-z-y-"]),
            pats(&["xz-y", "x-z-y", "xzy-"]),
        ];
        let partition = OverlapPartition::new(vec![5, 3], 3).unwrap();
        let clique = clique_from_partition(&family, &partition, &assignment).unwrap();
        assert_eq!(clique.len(), 11);
        assert_eq!(predicted_size(&family, &partition), Ratio::from_integer(11));
        let want = sorted(&[
            "Ixzyz",
            "Ix-zyz-",
            "Ix-zy-z",
            "Ixz-y-z",
            "Ix-z-y-z-",
            "yxz-yy",
            "y-x-z-yy",
            "yxzy-y",
            "y-xz-yy-",
            "yx-z-yy-",
            "y-xzy-y-",
        ]);
        assert_eq!(rendered(&family, &clique), want);
    }

    #[test]
    fn twelve_clique() {
        let family = OverlapFamily::new(ops(&["IXZYZ", "-YXZYY", "XXZXI"])).unwrap();
        assert_eq!(family.mu, 2);
        let p = |s: &str| family.parse_pattern(s).unwrap();
        let assignment = vec![vec![p("x-z")], vec![p("xz"), p("x-z-")], vec![p("xz-")]];
        let partition = OverlapPartition::new(vec![1, 2, 1], 2).unwrap();
        let clique = clique_from_partition(&family, &partition, &assignment).unwrap();
        assert_eq!(clique.len(), 12);
        assert_eq!(predicted_size(&family, &partition), Ratio::from_integer(12));
        let want = sorted(&[
            "Ix-zy-z",
            "Ix-zyz-",
            "y-xzyy",
            "yxzy-y",
            "yxzyy-",
            "y-xzy-y-",
            "y-x-z-yy",
            "yx-z-y-y",
            "yx-z-yy-",
            "y-x-z-y-y-",
            "x-xz-xI",
            "xxz-x-I",
        ]);
        assert_eq!(rendered(&family, &clique), want);
        assert_eq!(count_cliques_for(&family, &partition), 12);
    }

    #[test]
    fn rejects_bad_assignments() {
        let family = OverlapFamily::new(ops(&["IXZYZ", "-YXZYY"])).unwrap();
        let partition = OverlapPartition::new(vec![7, 1], 3).unwrap();
        let pats = family.patterns();
        let dup = vec![pats[..7].to_vec(), vec![pats[0]]];
        assert!(clique_from_partition(&family, &partition, &dup).is_err());
        assert!(OverlapPartition::new(vec![8, 0], 3).is_err());
        assert!(OverlapPartition::new(vec![4, 3], 3).is_err());
        assert!(OverlapFamily::new(ops(&["XI", "IX"])).is_err());
    }

    #[test]
    fn single_member_gives_stabilizer_clique() {
        let s = ops(&["-YXY"]);
        let family = OverlapFamily::new(s.clone()).unwrap();
        assert_eq!(family.mu, 3);
        let partition = OverlapPartition::new(vec![8], 3).unwrap();
        let clique = clique_from_partition(&family, &partition, &[family.patterns()]).unwrap();
        assert_eq!(clique.len(), 4);
        assert_eq!(count_cliques_for(&family, &partition), 1);
    }

    /// Counts maps from 2^μ patterns to members with the prescribed fibre sizes.
    fn brute_force_count(mu: usize, shares: &[usize]) -> u128 {
        let items = 1usize << mu;
        let r = shares.len();
        let mut count = 0;
        let mut code = vec![0usize; items];
        loop {
            let mut fib = vec![0usize; r];
            for &c in &code {
                fib[c] += 1;
            }
            if fib == shares {
                count += 1;
            }
            let mut i = 0;
            while i < items {
                code[i] += 1;
                if code[i] < r {
                    break;
                }
                code[i] = 0;
                i += 1;
            }
            if i == items {
                return count;
            }
        }
    }

    fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
        if parts == 1 {
            return vec![vec![total]];
        }
        (1..total)
            .flat_map(|a| {
                compositions(total - a, parts - 1)
                    .into_iter()
                    .map(move |mut rest| {
                        rest.insert(0, a);
                        rest
                    })
            })
            .collect()
    }

    #[test]
    fn counting_matches_brute_force() {
        assert_eq!(brute_force_count(2, &[1, 2, 1]), 12);
        assert_eq!(brute_force_count(1, &[1, 1]), 2);
        for mu in 1..=3 {
            for parts in 1..=(1usize << mu).min(4) {
                for shares in compositions(1 << mu, parts) {
                    let p = OverlapPartition::new(shares.clone(), mu).unwrap();
                    assert_eq!(
                        count_assignments(mu, &p),
                        brute_force_count(mu, &shares),
                        "{shares:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn bounds_reports() {
        let p3 = clique_bounds_check(&g("12,23")).unwrap();
        assert_eq!((p3.lower_bound, p3.upper_bound), (2, 4));
        assert!(p3.ok());
        let k2 = clique_bounds_check(&g("12")).unwrap();
        assert_eq!((k2.d_h, k2.lower_bound, k2.upper_bound), (2, 2, 2));
        assert!(k2.ok());
        let st4 = clique_bounds_check(&g("14,24,34")).unwrap();
        assert_eq!((st4.lower_bound, st4.upper_bound), (2, 8));
        // every weight-2 clique extends into a weight-4 element's clique here
        let e = st4.enumeration.as_ref().unwrap();
        assert_eq!((e.min_size, e.max_size), (6, 8));
        assert!(st4.within_bounds);
        assert!(st4.max_witness.is_some());
        assert!(st4.min_witness.is_none());
        assert_eq!(st4.non_maximal_min_weight.len(), 6);
        let json = serde_json::to_string(&st4).unwrap();
        assert!(json.contains("\"d_h\":2"));
    }

    #[test]
    fn group_family_maximality() {
        let group = StabilizerGroup::from_graph(&g("12,23")).unwrap();
        let a = group
            .index_of(&PauliOperator::parse("ZXZ").unwrap())
            .unwrap();
        let b = group
            .index_of(&PauliOperator::parse("-YXY").unwrap())
            .unwrap();
        let fam = OverlapFamily::from_group(&group, &[a, b]).unwrap();
        assert_eq!(fam.overlap_positions, 0b010);
        assert_eq!(fam.maximal, Some(true));
        let fam = OverlapFamily::from_group(&group, &[a]).unwrap();
        assert_eq!(fam.maximal, Some(true));
    }
}

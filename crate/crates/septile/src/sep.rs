//! The three separation relations on subsets of `[n]`, collection-level
//! predicates, greedy completion, and rank/purity verification.
//!
//! For subsets `A, B` of `[n]`:
//!
//! * `A < B` (global dominating): `max(A) < min(B)`;
//! * `A ⋖ B`: `(A - B) < (B - A)`;
//! * `A ▷ B` (splitting): `A - B` is nonempty and `B - A` splits into
//!   nonempty `B' < (A - B) < B''`;
//! * `A` *surrounds* `B`: there are no `i < j < k` with `i, k ∈ B - A` and
//!   `j ∈ A - B`.
//!
//! `A, B` are strongly separated if `A = B` or `A ⋖ B` or `B ⋖ A`; weakly
//! separated if the smaller (by cardinality) surrounds the larger; chord
//! separated if one surrounds the other.  Strong implies weak implies chord.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ground::{Collection, Ground, Subset};

/// Which of the three separation relations to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SepKind {
    Strong,
    Weak,
    Chord,
}

impl SepKind {
    pub const ALL: [SepKind; 3] = [SepKind::Strong, SepKind::Weak, SepKind::Chord];

    pub fn letter(&self) -> char {
        match self {
            SepKind::Strong => 's',
            SepKind::Weak => 'w',
            SepKind::Chord => 'c',
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SepKind::Strong => "strongly",
            SepKind::Weak => "weakly",
            SepKind::Chord => "chord",
        }
    }

    pub fn from_letter(c: char) -> Option<SepKind> {
        match c {
            's' => Some(SepKind::Strong),
            'w' => Some(SepKind::Weak),
            'c' => Some(SepKind::Chord),
            _ => None,
        }
    }
}

/// `A < B`: `max(A) < min(B)`; vacuously true when `A` is empty and `B` is
/// not, by the `min = max = 0` convention.
pub fn global_lt(a: Subset, b: Subset) -> bool {
    a.max_elem() < b.min_elem()
}

/// `A ⋖ B`: `A - B` globally dominates `B - A` after cancelations.
pub fn lessdot(a: Subset, b: Subset) -> bool {
    global_lt(a.diff(b), b.diff(a))
}

/// `A ▷ B`: `A - B` is nonempty and `B - A` splits around it.
pub fn splits(a: Subset, b: Subset) -> bool {
    let p = a.diff(b);
    let r = b.diff(a);
    if p.is_empty() {
        return false;
    }
    let lo = r.below(p.min_elem());
    let hi = r.above(p.max_elem());
    !lo.is_empty() && !hi.is_empty() && lo.union(hi) == r
}

/// `A` surrounds `B`: no `i < j < k` with `i, k ∈ B - A` and `j ∈ A - B`.
pub fn surrounds(a: Subset, b: Subset) -> bool {
    let p = a.diff(b);
    let r = b.diff(a);
    if r.is_empty() {
        return true;
    }
    // a violation exists iff some element of A - B lies strictly inside
    // the span of B - A
    p.above(r.min_elem()).below(r.max_elem()).is_empty()
}

/// Pairwise separation predicate for the chosen relation.
pub fn separated(kind: SepKind, a: Subset, b: Subset) -> bool {
    match kind {
        SepKind::Strong => a == b || lessdot(a, b) || lessdot(b, a),
        SepKind::Weak => {
            (a.card() <= b.card() && surrounds(a, b))
                || (b.card() <= a.card() && surrounds(b, a))
        }
        SepKind::Chord => surrounds(a, b) || surrounds(b, a),
    }
}

/// First pair of members violating pairwise separation, if any.
pub fn find_violation(kind: SepKind, c: &Collection) -> Option<(Subset, Subset)> {
    let members = c.members();
    for (t, &a) in members.iter().enumerate() {
        for &b in &members[t + 1..] {
            if !separated(kind, a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn is_separated_collection(kind: SepKind, c: &Collection) -> bool {
    find_violation(kind, c).is_none()
}

/// Is `c` maximal inside `d` (defaults to all of `2^[n]`)?  Maximal means no
/// member of `d \ c` is separated from all of `c`.
///
/// With `d = None` this enumerates the full power set, so it is desk scale.
pub fn is_maximal_in(kind: SepKind, c: &Collection, d: Option<&Collection>) -> Result<bool> {
    if !is_separated_collection(kind, c) {
        return Ok(false);
    }
    let candidates: Vec<Subset> = match d {
        Some(d) => {
            c.ground().check_same(&d.ground())?;
            if !c.is_subcollection_of(d) {
                return Err(Error::Internal("maximality domain does not contain the collection".into()));
            }
            d.iter().collect()
        }
        None => c.ground().subsets().collect(),
    };
    for x in candidates {
        if !c.contains(x) && c.iter().all(|m| separated(kind, x, m)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extend `c` to a maximal `kind`-separated collection in `2^[n]`, scanning
/// candidates in ascending bit-value order.
pub fn greedy_complete(kind: SepKind, c: &Collection) -> Result<Collection> {
    let order: Vec<Subset> = c.ground().subsets().collect();
    greedy_complete_with_order(kind, c, &order)
}

/// Greedy completion with an explicit candidate order (used by randomized
/// purity sampling).
pub fn greedy_complete_with_order(
    kind: SepKind,
    c: &Collection,
    order: &[Subset],
) -> Result<Collection> {
    if let Some((a, b)) = find_violation(kind, c) {
        return Err(Error::NotSeparated { kind: kind.name(), a, b });
    }
    let mut out = c.clone();
    for &x in order {
        if !out.contains(x) && out.iter().all(|m| separated(kind, x, m)) {
            out.insert(x)?;
        }
    }
    Ok(out)
}

/// `C(n,2) + n + 1` for strong/weak, `C(n,3) + C(n,2) + n + 1` for chord.
pub fn rank_formula(kind: SepKind, n: u8) -> u64 {
    let n = n as u64;
    let base = n * (n - 1) / 2 + n + 1;
    match kind {
        SepKind::Strong | SepKind::Weak => base,
        SepKind::Chord => n * (n - 1) * n.saturating_sub(2) / 6 + base,
    }
}

/// Report every maximal clique of the `adjacent` relation over vertex
/// indices `0..count` (Bron-Kerbosch with pivoting; `count <= 64`).
pub(crate) fn maximal_cliques(count: usize, adjacent: &[u64], mut emit: impl FnMut(u64)) {
    assert!(count <= 64);
    assert_eq!(adjacent.len(), count);
    let all = if count == 64 { u64::MAX } else { (1u64 << count) - 1 };

    fn bk(adj: &[u64], r: u64, mut p: u64, mut x: u64, emit: &mut impl FnMut(u64)) {
        if p == 0 && x == 0 {
            emit(r);
            return;
        }
        // pivot with most neighbours in p
        let mut pivot = 0usize;
        let mut best = -1i32;
        let mut scan = p | x;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let deg = (adj[v] & p).count_ones() as i32;
            if deg > best {
                best = deg;
                pivot = v;
            }
        }
        let mut cand = p & !adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let vbit = 1u64 << v;
            bk(adj, r | vbit, p & adj[v], x & adj[v], emit);
            p &= !vbit;
            x |= vbit;
        }
    }

    bk(adjacent, 0, all, 0, &mut emit);
}

/// All inclusion-wise maximal `kind`-separated collections in `2^[n]`
/// (exhaustive; `n <= 4`).
pub fn enumerate_maximal_collections(kind: SepKind, n: u8) -> Result<Vec<Collection>> {
    if n > 4 {
        return Err(Error::ExhaustiveOutOfRange { n, limit: 4 });
    }
    let ground = Ground::new(n as usize)?;
    let verts: Vec<Subset> = ground.subsets().collect();
    Ok(enumerate_maximal_in_verts(kind, ground, &verts))
}

/// All inclusion-wise maximal `kind`-separated collections inside `domain`
/// (`|domain| <= 64`).
pub fn enumerate_maximal_in(kind: SepKind, domain: &Collection) -> Vec<Collection> {
    let verts: Vec<Subset> = domain.iter().collect();
    enumerate_maximal_in_verts(kind, domain.ground(), &verts)
}

fn enumerate_maximal_in_verts(kind: SepKind, ground: Ground, verts: &[Subset]) -> Vec<Collection> {
    let count = verts.len();
    assert!(count <= 64);
    let mut adj = vec![0u64; count];
    for i in 0..count {
        for j in i + 1..count {
            if separated(kind, verts[i], verts[j]) {
                adj[i] |= 1u64 << j;
                adj[j] |= 1u64 << i;
            }
        }
    }
    let mut found = Vec::new();
    maximal_cliques(count, &adj, |clique| {
        let mut bits = clique;
        let mut members = Vec::new();
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            members.push(verts[v]);
        }
        found.push(Collection::from_subsets(ground, members).unwrap());
    });
    found.sort_by(|a, b| a.members().cmp(b.members()));
    found
}

/// How `verify_purity` explores the space of maximal collections.
#[derive(Debug, Clone, Copy)]
pub enum PurityMode {
    /// Enumerate every maximal collection (`n <= 4`).
    Exhaustive,
    /// Greedy completions of the empty collection over seeded random
    /// candidate orders.
    Randomized { trials: u32, seed: u64 },
}

/// Outcome of a purity check: every maximal collection seen must have
/// cardinality equal to the rank formula.
#[derive(Debug, Clone)]
pub struct PurityReport {
    pub kind: SepKind,
    pub n: u8,
    pub rank: u64,
    pub collections_seen: usize,
    pub min_size: usize,
    pub max_size: usize,
    /// Number of maximal collections (exhaustive mode only).
    pub total_maximal: Option<usize>,
    pub pure: bool,
}

/// Check purity of `2^[n]` for the given relation.
pub fn verify_purity(kind: SepKind, n: u8, mode: PurityMode) -> Result<PurityReport> {
    let rank = rank_formula(kind, n);
    let ground = Ground::new(n as usize)?;
    let mut sizes = Vec::new();
    let mut total = None;
    match mode {
        PurityMode::Exhaustive => {
            let all = enumerate_maximal_collections(kind, n)?;
            total = Some(all.len());
            sizes.extend(all.iter().map(|c| c.len()));
        }
        PurityMode::Randomized { trials, seed } => {
            if n > 7 {
                return Err(Error::ExhaustiveOutOfRange { n, limit: 7 });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let empty = Collection::new(ground);
            for _ in 0..trials {
                let mut order: Vec<Subset> = ground.subsets().collect();
                order.shuffle(&mut rng);
                let done = greedy_complete_with_order(kind, &empty, &order)?;
                debug_assert!(is_maximal_in(kind, &done, None)?);
                sizes.push(done.len());
            }
        }
    }
    let min_size = sizes.iter().copied().min().unwrap_or(0);
    let max_size = sizes.iter().copied().max().unwrap_or(0);
    Ok(PurityReport {
        kind,
        n,
        rank,
        collections_seen: sizes.len(),
        min_size,
        max_size,
        total_maximal: total,
        pure: min_size as u64 == rank && max_size as u64 == rank,
    })
}

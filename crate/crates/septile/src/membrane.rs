//! S-membranes in a cubillage: 2-dimensional subcomplexes projecting to
//! rhombus tilings, their precedence DAG and distributive lattice of order
//! ideals, membrane flips, and the constructions that fill the space before,
//! behind, or between membranes with cubes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cubillage::{Cube, Cubillage};
use crate::error::{Error, Result};
use crate::geom::{Gen2, Gen3};
use crate::ground::{Collection, Ground, Subset};
use crate::tiling::{HexConfig, Rhombus, Tiling};

/// An s-membrane: a set of rhombi whose plain projection is a rhombus
/// tiling of `Z(n,2)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SMembrane {
    ground: Ground,
    rhombi: BTreeSet<Rhombus>,
}

impl SMembrane {
    /// Wrap a rhombus set, checking that it projects to a valid tiling.
    pub fn from_rhombi(ground: Ground, rhombi: impl IntoIterator<Item = Rhombus>) -> Result<Self> {
        let rhombi: BTreeSet<Rhombus> = rhombi.into_iter().collect();
        let t = Tiling::from_rhombi_unchecked(ground, rhombi.clone());
        let report = t.validate(&Gen2::standard(ground));
        if !report.is_empty() {
            return Err(Error::NotMembrane(format!(
                "projection is not a tiling: {}",
                report[0]
            )));
        }
        Ok(SMembrane { ground, rhombi })
    }

    pub fn from_tiling(t: &Tiling) -> SMembrane {
        SMembrane { ground: t.ground(), rhombi: t.rhombi().collect() }
    }

    pub fn as_tiling(&self) -> Tiling {
        Tiling::from_rhombi_unchecked(self.ground, self.rhombi.clone())
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn rhombi(&self) -> impl Iterator<Item = Rhombus> + '_ {
        self.rhombi.iter().copied()
    }

    pub fn contains(&self, r: Rhombus) -> bool {
        self.rhombi.contains(&r)
    }

    pub fn spectrum(&self) -> Collection {
        self.as_tiling().spectrum()
    }
}

/// The precedence DAG on the cubes of a cubillage: an edge from one cube to
/// another when a rear rhombus of the first is a front rhombus of the second.
pub struct CubeDag {
    pub cubes: Vec<Cube>,
    pub preds: Vec<Vec<usize>>,
    pub succs: Vec<Vec<usize>>,
    /// A topological order (indices into `cubes`).
    pub topo: Vec<usize>,
}

impl CubeDag {
    pub fn index_of(&self, c: Cube) -> Option<usize> {
        self.cubes.binary_search(&c).ok()
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succs
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |v| (u, *v)))
    }

    /// All order ideals (downward closed cube sets) as bitmasks over
    /// `cubes`.  Desk scale: the cubillage must have at most 20 cubes.
    pub fn enumerate_ideals(&self) -> Result<Vec<u64>> {
        let m = self.cubes.len();
        if m > 20 {
            return Err(Error::Internal(format!("ideal enumeration needs <= 20 cubes, got {m}")));
        }
        let mut ideals: Vec<u64> = vec![0];
        for &v in &self.topo {
            let pred_mask: u64 = self.preds[v].iter().map(|p| 1u64 << p).sum();
            let with_v: Vec<u64> = ideals
                .iter()
                .filter(|&&s| s & pred_mask == pred_mask)
                .map(|&s| s | 1u64 << v)
                .collect();
            ideals.extend(with_v);
        }
        ideals.sort_unstable();
        Ok(ideals)
    }
}

/// Build the precedence DAG; errors if it has a cycle.
pub fn precedence_dag(q: &Cubillage) -> Result<CubeDag> {
    let cubes = q.cube_list();
    let index: BTreeMap<Cube, usize> = cubes.iter().enumerate().map(|(t, c)| (*c, t)).collect();
    let mut by_rear: BTreeMap<Rhombus, usize> = BTreeMap::new();
    for (t, c) in cubes.iter().enumerate() {
        for r in c.rear_rhombi() {
            by_rear.insert(r, t);
        }
    }
    let mut preds = vec![Vec::new(); cubes.len()];
    let mut succs = vec![Vec::new(); cubes.len()];
    for (t, c) in cubes.iter().enumerate() {
        for r in c.front_rhombi() {
            if let Some(&u) = by_rear.get(&r) {
                if u != t {
                    succs[u].push(t);
                    preds[t].push(u);
                }
            }
        }
    }
    // Kahn topological sort doubles as the acyclicity check
    let mut indeg: Vec<usize> = preds.iter().map(|p| p.len()).collect();
    let mut queue: VecDeque<usize> =
        indeg.iter().enumerate().filter(|(_, &d)| d == 0).map(|(t, _)| t).collect();
    let mut topo = Vec::with_capacity(cubes.len());
    while let Some(u) = queue.pop_front() {
        topo.push(u);
        for &v in &succs[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    if topo.len() != cubes.len() {
        return Err(Error::Internal("precedence graph has a cycle".into()));
    }
    let _ = index;
    Ok(CubeDag { cubes, preds, succs, topo })
}

/// The membrane of an order ideal: start at the front side and flip every
/// ideal cube in topological order.
pub fn membrane_of_ideal(q: &Cubillage, dag: &CubeDag, ideal: u64) -> Result<SMembrane> {
    let (front, _) = q.front_rear_sides();
    let mut rhombi: BTreeSet<Rhombus> = front.rhombi().collect();
    for &t in &dag.topo {
        if ideal >> t & 1 == 0 {
            continue;
        }
        let cube = dag.cubes[t];
        for r in cube.front_rhombi() {
            if !rhombi.remove(&r) {
                return Err(Error::NotIdeal);
            }
        }
        for r in cube.rear_rhombi() {
            rhombi.insert(r);
        }
    }
    SMembrane::from_rhombi(q.ground(), rhombi)
}

/// The front heap of a membrane: all cubes between the front side and the
/// membrane.
pub fn front_heap(q: &Cubillage, m: &SMembrane) -> Result<Vec<Cube>> {
    q.ground().check_same(&m.ground())?;
    let dag = precedence_dag(q)?;
    let touching_front: Vec<usize> = dag
        .cubes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.rear_rhombi().iter().any(|r| m.contains(*r)))
        .map(|(t, _)| t)
        .collect();
    let touching_rear: Vec<usize> = dag
        .cubes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.front_rhombi().iter().any(|r| m.contains(*r)))
        .map(|(t, _)| t)
        .collect();
    // close downward / upward
    let close = |seeds: &[usize], back: bool| -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = seeds.iter().copied().collect();
        let mut queue: VecDeque<usize> = seeds.iter().copied().collect();
        while let Some(u) = queue.pop_front() {
            let next = if back { &dag.preds[u] } else { &dag.succs[u] };
            for &v in next {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen
    };
    let front = close(&touching_front, true);
    let rear = close(&touching_rear, false);
    if !front.is_disjoint(&rear) || front.len() + rear.len() != dag.cubes.len() {
        return Err(Error::NotMembrane(
            "rhombus set does not split the cubillage into front and rear heaps".into(),
        ));
    }
    Ok(front.into_iter().map(|t| dag.cubes[t]).collect())
}

/// Complement of a front heap.
pub fn rear_heap_from_front(q: &Cubillage, front: &[Cube]) -> Vec<Cube> {
    let front: BTreeSet<Cube> = front.iter().copied().collect();
    q.cubes().filter(|c| !front.contains(c)).collect()
}

fn heap_mask(dag: &CubeDag, cubes: &[Cube]) -> Result<u64> {
    let mut mask = 0u64;
    for c in cubes {
        let t = dag
            .index_of(*c)
            .ok_or_else(|| Error::Internal(format!("cube {c:?} not in the cubillage")))?;
        mask |= 1u64 << t;
    }
    Ok(mask)
}

/// Meet of two membranes of one cubillage: heap intersection.
pub fn meet(q: &Cubillage, m1: &SMembrane, m2: &SMembrane) -> Result<SMembrane> {
    let dag = precedence_dag(q)?;
    let h1 = heap_mask(&dag, &front_heap(q, m1)?)?;
    let h2 = heap_mask(&dag, &front_heap(q, m2)?)?;
    membrane_of_ideal(q, &dag, h1 & h2)
}

/// Join of two membranes of one cubillage: heap union.
pub fn join(q: &Cubillage, m1: &SMembrane, m2: &SMembrane) -> Result<SMembrane> {
    let dag = precedence_dag(q)?;
    let h1 = heap_mask(&dag, &front_heap(q, m1)?)?;
    let h2 = heap_mask(&dag, &front_heap(q, m2)?)?;
    membrane_of_ideal(q, &dag, h1 | h2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipDir {
    /// Remove a maximal front-heap cube: its rear rhombi leave the membrane.
    Lowering,
    /// Add a minimal rear-heap cube: its front rhombi leave the membrane.
    Raising,
}

/// Flip the membrane across one cube of its cubillage.
pub fn membrane_flip(q: &Cubillage, m: &SMembrane, cube: Cube, dir: FlipDir) -> Result<SMembrane> {
    if !q.contains(cube) {
        return Err(Error::NotFlippable(format!("cube {cube:?} not in the cubillage")));
    }
    let (gone, added) = match dir {
        FlipDir::Lowering => (cube.rear_rhombi(), cube.front_rhombi()),
        FlipDir::Raising => (cube.front_rhombi(), cube.rear_rhombi()),
    };
    if !gone.iter().all(|r| m.contains(*r)) {
        return Err(Error::NotFlippable(format!("cube {cube:?} is not exposed on the membrane")));
    }
    let mut rhombi = m.rhombi.clone();
    for r in gone {
        rhombi.remove(&r);
    }
    for r in added {
        rhombi.insert(r);
    }
    SMembrane::from_rhombi(m.ground, rhombi)
}

/// The membrane of a tiling whose spectrum lies in the cubillage spectrum.
/// Every rhombus of the tiling is then a face of the cubillage.
pub fn membrane_from_tiling(q: &Cubillage, t: &Tiling) -> Result<SMembrane> {
    q.ground().check_same(&t.ground())?;
    let spec = q.spectrum();
    for v in t.spectrum().iter() {
        if !spec.contains(v) {
            return Err(Error::NotInSpectrum(v));
        }
    }
    let mut faces: BTreeSet<Rhombus> = BTreeSet::new();
    for c in q.cubes() {
        faces.extend(c.facets());
    }
    if q.ground().n() >= 3 {
        for r in t.rhombi() {
            if !faces.contains(&r) {
                return Err(Error::Internal(format!(
                    "rhombus {r:?} has all vertices in the spectrum but is not a face"
                )));
            }
        }
    }
    SMembrane::from_rhombi(q.ground(), t.rhombi())
}

/// Fill the region between the front side of the empty zonotope and an
/// abstract membrane (a tiling), and the region behind it, with cubes.
/// Returns the full cubillage and the two partial fills: the front fill has
/// one cube per inversion of the tiling.
pub fn extend_membrane_to_cubillage(t: &Tiling) -> Result<(Cubillage, Vec<Cube>, Vec<Cube>)> {
    let ground = t.ground();
    let report = t.validate(&Gen2::standard(ground));
    if !report.is_empty() {
        return Err(Error::Invalid(report));
    }

    // walk to the front: each upside-down hexagon is the rear of a cube
    let mut front_fill = Vec::new();
    let mut cur = t.clone();
    let standard = Tiling::standard(ground);
    while cur != standard {
        let hex = cur
            .hexagons(Some(HexConfig::YInv))
            .first()
            .copied()
            .ok_or_else(|| Error::Internal("no lowering hexagon before the front side".into()))?;
        front_fill.push(Cube::new(hex.base, hex.i, hex.j, hex.k));
        cur = cur.strong_flip(&hex)?;
    }

    // walk to the rear: each upright hexagon is the front of a cube
    let mut rear_fill = Vec::new();
    let mut cur = t.clone();
    let antistandard = Tiling::antistandard(ground);
    while cur != antistandard {
        let hex = cur
            .hexagons(Some(HexConfig::Y))
            .first()
            .copied()
            .ok_or_else(|| Error::Internal("no raising hexagon before the rear side".into()))?;
        rear_fill.push(Cube::new(hex.base, hex.i, hex.j, hex.k));
        cur = cur.strong_flip(&hex)?;
    }

    let all: Vec<Cube> = front_fill.iter().chain(rear_fill.iter()).copied().collect();
    let q = Cubillage::new(Gen3::standard(ground), all)?;
    Ok((q, front_fill, rear_fill))
}

/// Outcome of filling the space between two abstract membranes.
#[derive(Debug, Clone)]
pub enum FillResult {
    /// The filling cubes, exactly `|Inv(rear)| - |Inv(front)|` of them.
    Filled(Vec<Cube>),
    /// No cubillage contains both membranes in this order: a witness
    /// inversion of the front membrane that the rear one lacks.
    Impossible { witness: (u8, u8, u8) },
}

/// Fill the region between membrane `m` (closer to the front) and `m2` with
/// cubes, if possible.  Possible exactly when the inversion set of `m` is
/// contained in that of `m2`; each step flips an elementary normal triple
/// whose inversion is still missing.
pub fn fill_between(m: &Tiling, m2: &Tiling) -> Result<FillResult> {
    m.ground().check_same(&m2.ground())?;
    let target = m2.inversion_set();
    let start = m.inversion_set();
    if let Some(&w) = start.difference(&target).next() {
        return Ok(FillResult::Impossible { witness: w });
    }
    let mut cubes = Vec::new();
    let mut cur = m.clone();
    let mut inv = start;
    while inv != target {
        let hex = cur
            .hexagons(Some(HexConfig::Y))
            .into_iter()
            .find(|h| target.contains(&(h.i, h.j, h.k)) && !inv.contains(&(h.i, h.j, h.k)))
            .ok_or_else(|| {
                Error::Internal("no elementary triple in the missing inversions".into())
            })?;
        cubes.push(Cube::new(hex.base, hex.i, hex.j, hex.k));
        cur = cur.strong_flip(&hex)?;
        inv = cur.inversion_set();
    }
    if cur != *m2 {
        return Err(Error::Internal("inversion sets agree but tilings differ".into()));
    }
    Ok(FillResult::Filled(cubes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubillage::tests::four_cube;
    use crate::sep::{self, SepKind};

    fn g(n: usize) -> Ground {
        Ground::new(n).unwrap()
    }

    fn single_cube() -> Cubillage {
        let c = Collection::from_subsets(g(3), g(3).subsets()).unwrap();
        Cubillage::from_c_collection(&c).unwrap()
    }

    #[test]
    fn single_cube_has_two_ideals() {
        let q = single_cube();
        let dag = precedence_dag(&q).unwrap();
        let ideals = dag.enumerate_ideals().unwrap();
        assert_eq!(ideals.len(), 2);
        let m0 = membrane_of_ideal(&q, &dag, 0).unwrap();
        let m1 = membrane_of_ideal(&q, &dag, 1).unwrap();
        let (front, rear) = q.front_rear_sides();
        assert_eq!(m0.as_tiling(), front);
        assert_eq!(m1.as_tiling(), rear);
    }

    #[test]
    fn ideals_match_max_size_s_collections_n4() {
        let q = four_cube();
        let dag = precedence_dag(&q).unwrap();
        let ideals = dag.enumerate_ideals().unwrap();
        // each ideal gives a distinct membrane with a maximal-size spectrum
        let mut spectra = BTreeSet::new();
        for &i in &ideals {
            let m = membrane_of_ideal(&q, &dag, i).unwrap();
            let spec = m.spectrum();
            assert_eq!(spec.len(), sep::rank_formula(SepKind::Strong, 4) as usize);
            assert!(spectra.insert(spec.members().to_vec()));
            // round trip through the heap
            let heap = front_heap(&q, &m).unwrap();
            assert_eq!(heap_mask(&dag, &heap).unwrap(), i);
        }
        // and they are exactly the maximal-size strongly separated
        // collections inside the cubillage spectrum
        let inside: Vec<Vec<Subset>> = sep::enumerate_maximal_in(SepKind::Strong, &q.spectrum())
            .into_iter()
            .filter(|c| c.len() == 11)
            .map(|c| c.members().to_vec())
            .collect();
        assert_eq!(spectra.len(), inside.len());
        for c in inside {
            assert!(spectra.contains(&c));
        }
    }

    #[test]
    fn meet_join_laws_n4() {
        let q = four_cube();
        let dag = precedence_dag(&q).unwrap();
        let ideals = dag.enumerate_ideals().unwrap();
        let membranes: Vec<SMembrane> =
            ideals.iter().map(|&i| membrane_of_ideal(&q, &dag, i).unwrap()).collect();
        for (a, ma) in ideals.iter().zip(&membranes) {
            for (b, mb) in ideals.iter().zip(&membranes) {
                let lo = meet(&q, ma, mb).unwrap();
                let hi = join(&q, ma, mb).unwrap();
                assert_eq!(heap_mask(&dag, &front_heap(&q, &lo).unwrap()).unwrap(), a & b);
                assert_eq!(heap_mask(&dag, &front_heap(&q, &hi).unwrap()).unwrap(), a | b);
            }
        }
        // idempotence
        let m = &membranes[ideals.len() / 2];
        assert_eq!(meet(&q, m, m).unwrap(), *m);
        assert_eq!(join(&q, m, m).unwrap(), *m);
    }

    #[test]
    fn membrane_flips() {
        let q = single_cube();
        let cube = q.cube_list()[0];
        let (front, rear) = q.front_rear_sides();
        let m_rear = SMembrane::from_tiling(&rear);
        let lowered = membrane_flip(&q, &m_rear, cube, FlipDir::Lowering).unwrap();
        assert_eq!(lowered.as_tiling(), front);
        // flip spectrum change matches the tiling-level flip
        let m_front = SMembrane::from_tiling(&front);
        let raised = membrane_flip(&q, &m_front, cube, FlipDir::Raising).unwrap();
        assert_eq!(raised.as_tiling(), rear);
        // a non-exposed cube is rejected
        assert!(membrane_flip(&q, &m_front, cube, FlipDir::Lowering).is_err());
    }

    #[test]
    fn membrane_flip_matches_strong_flip_n4() {
        let q = four_cube();
        let dag = precedence_dag(&q).unwrap();
        for &ideal in &dag.enumerate_ideals().unwrap() {
            let m = membrane_of_ideal(&q, &dag, ideal).unwrap();
            let t = m.as_tiling();
            for (t_idx, cube) in dag.cubes.iter().enumerate() {
                // raising flip applicable when the cube is a minimal element
                // outside the ideal
                if ideal >> t_idx & 1 == 0
                    && dag.preds[t_idx].iter().all(|p| ideal >> p & 1 == 1)
                {
                    let m2 = membrane_flip(&q, &m, *cube, FlipDir::Raising).unwrap();
                    let hex = crate::tiling::Hexagon {
                        base: cube.base,
                        i: cube.i,
                        j: cube.j,
                        k: cube.k,
                        config: HexConfig::Y,
                    };
                    assert_eq!(m2.as_tiling(), t.strong_flip(&hex).unwrap());
                }
            }
        }
    }

    #[test]
    fn membrane_from_tiling_cases() {
        let q = four_cube();
        // the standard tiling is the front side of any cubillage
        let m = membrane_from_tiling(&q, &Tiling::standard(g(4))).unwrap();
        assert_eq!(m.as_tiling(), q.front_rear_sides().0);
        // spectrum is preserved
        assert_eq!(m.spectrum(), Collection::intervals(g(4)));
        // a tiling with a vertex outside the cubillage spectrum is rejected:
        // flipping at (2,3,4) brings in the vertex 24, which q misses
        let base = Tiling::standard(g(4));
        let hex = base
            .hexagons(Some(HexConfig::Y))
            .into_iter()
            .find(|h| (h.i, h.j, h.k) == (2, 3, 4))
            .unwrap();
        let t = base.strong_flip(&hex).unwrap();
        assert!(matches!(membrane_from_tiling(&q, &t), Err(Error::NotInSpectrum(_))));
    }

    #[test]
    fn extend_standard_and_antistandard() {
        let (q, qf, qr) = extend_membrane_to_cubillage(&Tiling::standard(g(3))).unwrap();
        assert_eq!(q.len(), 1);
        assert!(qf.is_empty());
        assert_eq!(qr.len(), 1);

        let (q, qf, qr) = extend_membrane_to_cubillage(&Tiling::antistandard(g(4))).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(qf.len(), 4); // all inversions are in front
        assert!(qr.is_empty());
    }

    #[test]
    fn extend_all_tilings_n4() {
        for t in Tiling::standard(g(4)).flip_component() {
            let (q, qf, _) = extend_membrane_to_cubillage(&t).unwrap();
            assert_eq!(qf.len(), t.inversion_set().len());
            assert!(t.spectrum().is_subcollection_of(&q.spectrum()));
            assert!(q.validate().is_empty());
        }
    }

    #[test]
    fn fill_between_cases() {
        let std5 = Tiling::standard(g(5));
        let anti5 = Tiling::antistandard(g(5));
        match fill_between(&std5, &anti5).unwrap() {
            FillResult::Filled(cubes) => assert_eq!(cubes.len(), 10), // C(5,3)
            other => panic!("expected a fill, got {other:?}"),
        }
        match fill_between(&std5, &std5).unwrap() {
            FillResult::Filled(cubes) => assert!(cubes.is_empty()),
            other => panic!("expected an empty fill, got {other:?}"),
        }

        // two single-flip tilings with incomparable inversion sets
        let base = Tiling::standard(g(4));
        let hexes = base.hexagons(Some(HexConfig::Y));
        let picks: Vec<Tiling> = hexes
            .iter()
            .filter(|h| (h.i, h.j, h.k) == (1, 2, 3) || (h.i, h.j, h.k) == (2, 3, 4))
            .map(|h| base.strong_flip(h).unwrap())
            .collect();
        assert_eq!(picks.len(), 2);
        assert_eq!(picks[0].inversion_set().len(), 1);
        match fill_between(&picks[0], &picks[1]).unwrap() {
            FillResult::Impossible { witness } => assert_eq!(witness, (1, 2, 3)),
            other => panic!("expected impossibility, got {other:?}"),
        }
    }

    #[test]
    fn fill_between_all_pairs_n4() {
        let tilings = Tiling::standard(g(4)).flip_component();
        for a in &tilings {
            for b in &tilings {
                let ia = a.inversion_set();
                let ib = b.inversion_set();
                match fill_between(a, b).unwrap() {
                    FillResult::Filled(cubes) => {
                        assert!(ia.is_subset(&ib));
                        assert_eq!(cubes.len(), ib.len() - ia.len());
                    }
                    FillResult::Impossible { witness } => {
                        assert!(ia.contains(&witness) && !ib.contains(&witness));
                    }
                }
            }
        }
    }
}

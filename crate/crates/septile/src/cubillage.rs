//! Cubillages: fine zonotopal tilings of `Z(n,3)` into cubes `zeta(X|ijk)`.
//!
//! A cubillage is stored as its set of cubes; geometry (volumes, overlap
//! tests, projections) is derived from the generators on demand.  The front
//! and rear sides of the zonotope project to the standard and anti-standard
//! rhombus tilings, and the front/rear rhombi of a single cube are
//!
//! * front: `rho(X|ij), rho(X|jk), rho(Xj|ik)`;
//! * rear:  `rho(X|ik), rho(Xi|jk), rho(Xk|ij)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result, Violation};
use crate::geom::{self, Gen3};
use crate::ground::{Collection, Ground, Subset};
use crate::sep::{self, SepKind};
use crate::tiling::{Rhombus, Tiling};

/// The cube `zeta(X|ijk)`, `i < j < k`, none in `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    pub base: Subset,
    pub i: u8,
    pub j: u8,
    pub k: u8,
}

impl Cube {
    pub fn new(base: Subset, i: u8, j: u8, k: u8) -> Self {
        assert!(i < j && j < k, "colors must be ordered");
        assert!(
            !base.contains(i) && !base.contains(j) && !base.contains(k),
            "colors must avoid the base"
        );
        Cube { base, i, j, k }
    }

    pub fn colors(&self) -> (u8, u8, u8) {
        (self.i, self.j, self.k)
    }

    pub fn has_color(&self, c: u8) -> bool {
        self.i == c || self.j == c || self.k == c
    }

    pub fn vertices(&self) -> [Subset; 8] {
        let x = self.base;
        let (i, j, k) = (self.i, self.j, self.k);
        [
            x,
            x.insert(i),
            x.insert(j),
            x.insert(k),
            x.insert(i).insert(j),
            x.insert(i).insert(k),
            x.insert(j).insert(k),
            x.insert(i).insert(j).insert(k),
        ]
    }

    /// The rhombi visible from the front (small `y`).
    pub fn front_rhombi(&self) -> [Rhombus; 3] {
        let (x, i, j, k) = (self.base, self.i, self.j, self.k);
        [
            Rhombus::new(x, i, j),
            Rhombus::new(x, j, k),
            Rhombus::new(x.insert(j), i, k),
        ]
    }

    /// The rhombi visible from the rear (large `y`).
    pub fn rear_rhombi(&self) -> [Rhombus; 3] {
        let (x, i, j, k) = (self.base, self.i, self.j, self.k);
        [
            Rhombus::new(x, i, k),
            Rhombus::new(x.insert(i), j, k),
            Rhombus::new(x.insert(k), i, j),
        ]
    }

    pub fn facets(&self) -> [Rhombus; 6] {
        let f = self.front_rhombi();
        let r = self.rear_rhombi();
        [f[0], f[1], f[2], r[0], r[1], r[2]]
    }

    /// Complementation: a point reflection of the zonotope swapping front
    /// and rear.
    pub fn complement(&self, ground: Ground) -> Cube {
        let top = self.base.insert(self.i).insert(self.j).insert(self.k);
        Cube::new(top.complement_in(ground), self.i, self.j, self.k)
    }

    /// The left-right mirror `i -> n + 1 - i`.
    pub fn mirror(&self, ground: Ground) -> Cube {
        let n = ground.n();
        Cube::new(
            self.base.relabel(|e| n + 1 - e),
            n + 1 - self.k,
            n + 1 - self.j,
            n + 1 - self.i,
        )
    }
}

/// A cubillage on `Z(n,3)`.
#[derive(Clone)]
pub struct Cubillage {
    gens: Gen3,
    cubes: BTreeSet<Cube>,
}

impl Cubillage {
    /// Build and validate.
    pub fn new(gens: Gen3, cubes: impl IntoIterator<Item = Cube>) -> Result<Cubillage> {
        let q = Cubillage { gens, cubes: cubes.into_iter().collect() };
        let report = q.validate();
        if !report.is_empty() {
            return Err(Error::Invalid(report));
        }
        Ok(q)
    }

    pub(crate) fn from_cubes_unchecked(
        gens: Gen3,
        cubes: impl IntoIterator<Item = Cube>,
    ) -> Cubillage {
        Cubillage { gens, cubes: cubes.into_iter().collect() }
    }

    /// Reconstruct the cubillage of a maximal chord separated collection:
    /// the cubes are exactly the `(X, i<j<k)` whose eight vertex subsets all
    /// lie in the collection.
    pub fn from_c_collection(c: &Collection) -> Result<Cubillage> {
        let ground = c.ground();
        let need = sep::rank_formula(SepKind::Chord, ground.n()) as usize;
        if c.len() != need {
            return Err(Error::NotMaximal { kind: "chord", got: c.len(), need });
        }
        if let Some((a, b)) = sep::find_violation(SepKind::Chord, c) {
            return Err(Error::NotSeparated { kind: "chord", a, b });
        }
        let n = ground.n();
        let mut cubes = Vec::new();
        for x in c.iter() {
            for i in 1..=n {
                if x.contains(i) || !c.contains(x.insert(i)) {
                    continue;
                }
                for j in i + 1..=n {
                    if x.contains(j) || !c.contains(x.insert(j)) {
                        continue;
                    }
                    for k in j + 1..=n {
                        if x.contains(k) {
                            continue;
                        }
                        let cube = Cube::new(x, i, j, k);
                        if cube.vertices().iter().all(|v| c.contains(*v)) {
                            cubes.push(cube);
                        }
                    }
                }
            }
        }
        let q = Cubillage::new(Gen3::standard(ground), cubes)?;
        if q.spectrum() != *c {
            return Err(Error::Internal("reconstructed spectrum differs from input".into()));
        }
        Ok(q)
    }

    pub fn ground(&self) -> Ground {
        self.gens.ground()
    }

    pub fn gens(&self) -> &Gen3 {
        &self.gens
    }

    pub fn cubes(&self) -> impl Iterator<Item = Cube> + '_ {
        self.cubes.iter().copied()
    }

    pub fn cube_list(&self) -> Vec<Cube> {
        self.cubes.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn contains(&self, c: Cube) -> bool {
        self.cubes.contains(&c)
    }

    /// The vertex set; boundary vertices are always present.
    pub fn spectrum(&self) -> Collection {
        let ground = self.ground();
        let mut seen: BTreeSet<Subset> = Collection::intervals(ground).iter().collect();
        seen.extend(Collection::co_intervals(ground).iter());
        for c in &self.cubes {
            seen.extend(c.vertices());
        }
        Collection::from_subsets(ground, seen).expect("vertices fit the ground")
    }

    /// Facets appearing on exactly one cube, split into the front and rear
    /// side of the zonotope boundary.
    fn boundary_facets(&self) -> (BTreeSet<Rhombus>, BTreeSet<Rhombus>) {
        let mut count: BTreeMap<Rhombus, Vec<bool>> = BTreeMap::new();
        for c in &self.cubes {
            for r in c.front_rhombi() {
                count.entry(r).or_default().push(true);
            }
            for r in c.rear_rhombi() {
                count.entry(r).or_default().push(false);
            }
        }
        let mut front = BTreeSet::new();
        let mut rear = BTreeSet::new();
        for (r, owners) in count {
            if owners.len() == 1 {
                // a facet on the front of its only cube faces the front
                // boundary of the zonotope
                if owners[0] {
                    front.insert(r);
                } else {
                    rear.insert(r);
                }
            }
        }
        (front, rear)
    }

    /// The front and rear sides as rhombus tilings (projections by `pi`).
    pub fn front_rear_sides(&self) -> (Tiling, Tiling) {
        let ground = self.ground();
        if ground.n() <= 2 {
            return (Tiling::standard(ground), Tiling::antistandard(ground));
        }
        let (front, rear) = self.boundary_facets();
        (
            Tiling::from_rhombi_unchecked(ground, front),
            Tiling::from_rhombi_unchecked(ground, rear),
        )
    }

    /// Full structural validation; empty report means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let ground = self.ground();
        let n = ground.n();
        if self.gens.validate().is_err() {
            out.push(Violation::new("invalid generators"));
            return out;
        }

        let mut per_triple: BTreeMap<(u8, u8, u8), usize> = BTreeMap::new();
        for c in &self.cubes {
            if c.k > n || !ground.contains(c.base) {
                out.push(Violation::new(format!("cube {c:?} out of ground")));
                continue;
            }
            *per_triple.entry((c.i, c.j, c.k)).or_default() += 1;
        }
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    match per_triple.get(&(i, j, k)).copied().unwrap_or(0) {
                        0 => out.push(Violation::new(format!("missing color triple {i},{j},{k}"))),
                        1 => {}
                        m => out.push(Violation::new(format!("{m} cubes of triple {i},{j},{k}"))),
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }

        // volume bookkeeping (redundant once one-per-triple holds)
        let mut vol = geom::Rat::ZERO;
        for c in &self.cubes {
            vol += self.gens.cube_volume(c.i, c.j, c.k);
        }
        if vol != self.gens.zonotope_volume() {
            out.push(Violation::new("cube volumes do not sum to the zonotope volume"));
        }

        // pairwise interior disjointness (desk scale)
        let cubes: Vec<&Cube> = self.cubes.iter().collect();
        if cubes.len() <= 400 {
            for (t, a) in cubes.iter().enumerate() {
                let ca = self.gens.point3(a.base);
                let ea = [self.gens.theta(a.i), self.gens.theta(a.j), self.gens.theta(a.k)];
                for b in &cubes[t + 1..] {
                    let cb = self.gens.point3(b.base);
                    let eb = [self.gens.theta(b.i), self.gens.theta(b.j), self.gens.theta(b.k)];
                    if geom::boxes_intersect(ca, ea, cb, eb) {
                        out.push(Violation::new(format!("cubes {a:?} and {b:?} overlap")));
                    }
                }
            }
        }

        // facet matching: every facet on at most two cubes, interior facets
        // front-of-one and rear-of-the-other, boundary facets forming the
        // standard and anti-standard tilings
        let mut owners: BTreeMap<Rhombus, Vec<bool>> = BTreeMap::new();
        for c in &self.cubes {
            for r in c.front_rhombi() {
                owners.entry(r).or_default().push(true);
            }
            for r in c.rear_rhombi() {
                owners.entry(r).or_default().push(false);
            }
        }
        for (r, sides) in &owners {
            match sides.len() {
                1 => {}
                2 => {
                    if sides[0] == sides[1] {
                        out.push(Violation::new(format!(
                            "facet {r:?} is on the same side of both incident cubes"
                        )));
                    }
                }
                m => out.push(Violation::new(format!("facet {r:?} on {m} cubes"))),
            }
        }
        if n >= 3 {
            let (front, rear) = self.front_rear_sides();
            if front != Tiling::standard(ground) {
                out.push(Violation::new("front side does not project to the standard tiling"));
            }
            if rear != Tiling::antistandard(ground) {
                out.push(Violation::new("rear side does not project to the anti-standard tiling"));
            }
        }

        // spectrum size and pairwise chord separation
        let spec = self.spectrum();
        let want = sep::rank_formula(SepKind::Chord, n) as usize;
        if spec.len() != want {
            out.push(Violation::new(format!("spectrum size {} != {want}", spec.len())));
        }
        if let Some((a, b)) = sep::find_violation(SepKind::Chord, &spec) {
            out.push(Violation::new(format!("spectrum not chord separated: {a} vs {b}")));
        }
        out
    }

    /// The cubes using the given color (the "pie"), its front/rear disks,
    /// the boundary belt, and the cubes strictly before/behind it.
    /// Only the extreme colors 1 and `n` have this disk structure.
    pub fn pie(&self, color: u8) -> Result<Pie> {
        let n = self.ground().n();
        if color == n {
            Ok(self.pie_last())
        } else if color == 1 {
            // mirror, take the pie of the last color, map back
            let m = self.mirror();
            let pie = m.pie_last();
            let ground = self.ground();
            Ok(Pie {
                color: 1,
                cubes: pie.cubes.iter().map(|c| c.mirror(ground)).collect(),
                disk_front: pie.disk_front.iter().map(|r| r.mirror(ground)).collect(),
                disk_rear: pie.disk_rear.iter().map(|r| r.mirror(ground)).collect(),
                belt: pie.belt.iter().map(|r| r.mirror(ground)).collect(),
                before: pie.before.iter().map(|c| c.mirror(ground)).collect(),
                behind: pie.behind.iter().map(|c| c.mirror(ground)).collect(),
            })
        } else {
            Err(Error::Internal(format!("pie is only defined for colors 1 and {n}")))
        }
    }

    fn pie_last(&self) -> Pie {
        let n = self.ground().n();
        let mut cubes = Vec::new();
        let mut before = Vec::new();
        let mut behind = Vec::new();
        let mut disk_front = Vec::new();
        let mut disk_rear = Vec::new();
        for c in &self.cubes {
            if c.k == n {
                cubes.push(*c);
                disk_front.push(Rhombus::new(c.base, c.i, c.j));
                disk_rear.push(Rhombus::new(c.base.insert(n), c.i, c.j));
            } else if c.base.contains(n) {
                behind.push(*c);
            } else {
                before.push(*c);
            }
        }
        let (front_side, rear_side) = self.front_rear_sides();
        let belt = front_side
            .rhombi()
            .chain(rear_side.rhombi())
            .filter(|r| r.j == n)
            .collect();
        Pie { color: n, cubes, disk_front, disk_rear, belt, before, behind }
    }

    /// Contract away the given extreme color: delete the pie and shift the
    /// rear part down, producing a cubillage on `n - 1` colors together with
    /// the image of the pie (an s-membrane of the result).
    ///
    /// The result carries the standard generators of its ground; the
    /// combinatorial structure does not depend on that choice.
    pub fn contract(&self, color: u8) -> Result<(Cubillage, crate::membrane::SMembrane)> {
        let n = self.ground().n();
        if n < 2 {
            return Err(Error::Internal("cannot contract a one-color zonotope".into()));
        }
        if color == n {
            let pie = self.pie_last();
            let small = Ground::new(n as usize - 1)?;
            let mut cubes: Vec<Cube> = pie.before;
            cubes.extend(pie.behind.iter().map(|c| Cube::new(c.base.remove(n), c.i, c.j, c.k)));
            let q = Cubillage::new(Gen3::standard(small), cubes)?;
            let membrane =
                crate::membrane::SMembrane::from_rhombi(small, pie.disk_front.iter().copied())?;
            Ok((q, membrane))
        } else if color == 1 {
            let (q, m) = self.mirror().contract(n - 1 + 1)?;
            let small = q.ground();
            let cubes: Vec<Cube> = q.cubes().map(|c| c.mirror(small)).collect();
            let q = Cubillage::new(Gen3::standard(small), cubes)?;
            let rhombi: Vec<Rhombus> = m.rhombi().map(|r| r.mirror(small)).collect();
            Ok((q, crate::membrane::SMembrane::from_rhombi(small, rhombi)?))
        } else {
            Err(Error::Internal(format!("contraction is only defined for colors 1 and {n}")))
        }
    }

    /// Inverse of [`Cubillage::contract`]: expand along an s-membrane of
    /// `self`, inserting one cube of the new color per membrane rhombus.
    /// The new color is either `n + 1` (expanding the last color) or `1`
    /// (every old color shifts up by one).
    pub fn expand(&self, m: &crate::membrane::SMembrane, color_is_last: bool) -> Result<Cubillage> {
        let n = self.ground().n();
        let big = Ground::new(n as usize + 1)?;
        if color_is_last {
            let new = n + 1;
            let front = crate::membrane::front_heap(self, m)?;
            let rear = crate::membrane::rear_heap_from_front(self, &front);
            let mut cubes: Vec<Cube> = front;
            cubes.extend(m.rhombi().map(|r| Cube::new(r.base, r.i, r.j, new)));
            cubes.extend(rear.into_iter().map(|c| Cube::new(c.base.insert(new), c.i, c.j, c.k)));
            Cubillage::new(Gen3::standard(big), cubes)
        } else {
            let small = self.ground();
            let mirrored_cubes: Vec<Cube> = self.cubes().map(|c| c.mirror(small)).collect();
            let mq = Cubillage::new(Gen3::standard(small), mirrored_cubes)?;
            let rhombi: Vec<Rhombus> = m.rhombi().map(|r| r.mirror(small)).collect();
            let mm = crate::membrane::SMembrane::from_rhombi(small, rhombi)?;
            let big_q = mq.expand(&mm, true)?;
            let cubes: Vec<Cube> = big_q.cubes().map(|c| c.mirror(big)).collect();
            Cubillage::new(Gen3::standard(big), cubes)
        }
    }

    /// The mirror image (color `i` to `n + 1 - i`).
    pub fn mirror(&self) -> Cubillage {
        let ground = self.ground();
        Cubillage {
            gens: self.gens.mirror(),
            cubes: self.cubes.iter().map(|c| c.mirror(ground)).collect(),
        }
    }

    /// The complement image (point reflection; swaps front and rear).
    pub fn complement(&self) -> Cubillage {
        let ground = self.ground();
        Cubillage {
            gens: self.gens.clone(),
            cubes: self.cubes.iter().map(|c| c.complement(ground)).collect(),
        }
    }
}

/// The decomposition of a cubillage around one extreme color.
#[derive(Debug, Clone)]
pub struct Pie {
    pub color: u8,
    /// The cubes using the color.
    pub cubes: Vec<Cube>,
    /// Front disk: one rhombus per pie cube, on the front of the pie.
    pub disk_front: Vec<Rhombus>,
    /// Rear disk: the front disk shifted by the color generator.
    pub disk_rear: Vec<Rhombus>,
    /// Boundary rhombi of the zonotope using the color.
    pub belt: Vec<Rhombus>,
    /// Cubes strictly before the pie (no occurrence of the color).
    pub before: Vec<Cube>,
    /// Cubes strictly behind the pie (color in the base).
    pub behind: Vec<Cube>,
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::sep::{enumerate_maximal_collections, greedy_complete};

    fn s(elems: &[u8]) -> Subset {
        Subset::from_elems(elems)
    }

    fn g(n: usize) -> Ground {
        Ground::new(n).unwrap()
    }

    /// The cubillage on Z(4,3) whose spectrum misses 24.
    pub(crate) fn four_cube() -> Cubillage {
        let c = Collection::from_subsets(
            g(4),
            g(4).subsets().filter(|x| *x != s(&[2, 4])),
        )
        .unwrap();
        Cubillage::from_c_collection(&c).unwrap()
    }

    #[test]
    fn single_cube_fills_z33() {
        let c = Collection::from_subsets(g(3), g(3).subsets()).unwrap();
        let q = Cubillage::from_c_collection(&c).unwrap();
        assert_eq!(q.cube_list(), vec![Cube::new(Subset::EMPTY, 1, 2, 3)]);
        assert_eq!(q.spectrum().len(), 8);
    }

    #[test]
    fn the_two_cubillages_on_z43() {
        let q13 = four_cube();
        let want: BTreeSet<Cube> = [
            Cube::new(Subset::EMPTY, 1, 2, 3),
            Cube::new(Subset::EMPTY, 1, 3, 4),
            Cube::new(s(&[1]), 2, 3, 4),
            Cube::new(s(&[3]), 1, 2, 4),
        ]
        .into_iter()
        .collect();
        assert_eq!(q13.cubes, want);
        assert_eq!(q13.spectrum().len(), 15);

        // the mirror case: spectrum misses 13
        let c = Collection::from_subsets(g(4), g(4).subsets().filter(|x| *x != s(&[1, 3])))
            .unwrap();
        let q24 = Cubillage::from_c_collection(&c).unwrap();
        assert_eq!(q24.len(), 4);
        let mirrored: BTreeSet<Cube> = q13.cubes.iter().map(|c| c.mirror(g(4))).collect();
        assert_eq!(q24.cubes, mirrored);
    }

    #[test]
    fn sides_project_to_standard_tilings() {
        let q = four_cube();
        let (front, rear) = q.front_rear_sides();
        assert_eq!(front, Tiling::standard(g(4)));
        assert_eq!(rear, Tiling::antistandard(g(4)));
    }

    #[test]
    fn deleting_a_cube_is_caught() {
        let q = four_cube();
        let mut cubes = q.cube_list();
        cubes.pop();
        let broken = Cubillage::from_cubes_unchecked(Gen3::standard(g(4)), cubes);
        let report = broken.validate();
        assert!(report.iter().any(|v| v.what.contains("missing color triple")));
    }

    #[test]
    fn pie_of_the_four_cube() {
        let q = four_cube();
        let pie = q.pie(4).unwrap();
        assert_eq!(pie.cubes.len(), 3);
        assert_eq!(pie.before.len() + pie.behind.len(), 1);
        // the front disk projects to a rhombus tiling of Z(3,2)
        let t = Tiling::from_rhombi_unchecked(g(3), pie.disk_front.iter().copied().collect());
        assert!(t.validate(&crate::geom::Gen2::standard(g(3))).is_empty());
        assert_eq!(pie.belt.len(), 2 * 3);

        let pie1 = q.pie(1).unwrap();
        assert_eq!(pie1.cubes.len(), 3);
        assert!(q.pie(2).is_err());
    }

    #[test]
    fn single_cube_pie_is_everything() {
        let c = Collection::from_subsets(g(3), g(3).subsets()).unwrap();
        let q = Cubillage::from_c_collection(&c).unwrap();
        let pie = q.pie(3).unwrap();
        assert_eq!(pie.cubes.len(), 1);
        assert!(pie.before.is_empty() && pie.behind.is_empty());
    }

    #[test]
    fn contract_four_cube() {
        let q = four_cube();
        let (small, m) = q.contract(4).unwrap();
        assert_eq!(small.cube_list(), vec![Cube::new(Subset::EMPTY, 1, 2, 3)]);
        // the pie image is the rear side of the remaining cube
        let rear: BTreeSet<Rhombus> =
            Cube::new(Subset::EMPTY, 1, 2, 3).rear_rhombi().into_iter().collect();
        assert_eq!(m.rhombi().collect::<BTreeSet<_>>(), rear);
    }

    #[test]
    fn contract_expand_round_trip() {
        // both extreme colors, on greedy chord-separated completions
        for n in 3..=6usize {
            let ground = g(n);
            let c = greedy_complete(SepKind::Chord, &Collection::new(ground)).unwrap();
            let q = Cubillage::from_c_collection(&c).unwrap();
            for color_is_last in [true, false] {
                let color = if color_is_last { n as u8 } else { 1 };
                let (small, m) = q.contract(color).unwrap();
                let back = small.expand(&m, color_is_last).unwrap();
                assert_eq!(back.cubes, q.cubes, "n={n} color={color}");
            }
        }
    }

    #[test]
    fn expand_single_cube_over_front_side() {
        let c = Collection::from_subsets(g(3), g(3).subsets()).unwrap();
        let q = Cubillage::from_c_collection(&c).unwrap();
        let (front, _) = q.front_rear_sides();
        let m = crate::membrane::SMembrane::from_tiling(&front);
        let big = q.expand(&m, true).unwrap();
        assert_eq!(big.len(), 4);
        for r in front.rhombi() {
            assert!(big.contains(Cube::new(r.base, r.i, r.j, 4)));
        }
    }

    #[test]
    fn reconstruction_round_trip_exhaustive_n4() {
        for c in enumerate_maximal_collections(SepKind::Chord, 4).unwrap() {
            let q = Cubillage::from_c_collection(&c).unwrap();
            assert_eq!(q.spectrum(), c);
        }
    }

    #[test]
    fn complement_swaps_sides() {
        let q = four_cube();
        let qc = q.complement();
        assert!(qc.validate().is_empty());
        let (front, _) = q.front_rear_sides();
        let (_, rear_c) = qc.front_rear_sides();
        assert_eq!(front.complement(), rear_c);
    }
}

//! Rhombus tilings on the zonogon `Z(n,2)`: construction from maximal
//! strongly separated collections, validation, hexagonal flips, dual paths
//! and inversion sets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result, Violation};
use crate::geom::{self, Gen2, P2};
use crate::ground::{Collection, Ground, Subset};
use crate::sep::{self, SepKind};

/// The tile `rho(X|ij)`: vertices `X, Xi, Xj, Xij` for colors `i < j`,
/// neither in `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rhombus {
    pub base: Subset,
    pub i: u8,
    pub j: u8,
}

impl Rhombus {
    pub fn new(base: Subset, i: u8, j: u8) -> Self {
        assert!(i < j, "colors must be ordered");
        assert!(!base.contains(i) && !base.contains(j), "colors must avoid the base");
        Rhombus { base, i, j }
    }

    pub fn vertices(&self) -> [Subset; 4] {
        let x = self.base;
        [x, x.insert(self.i), x.insert(self.j), x.insert(self.i).insert(self.j)]
    }

    /// Directed edges `(tail, head, color)` with `head = tail + color`.
    pub fn edges(&self) -> [(Subset, Subset, u8); 4] {
        let x = self.base;
        let xi = x.insert(self.i);
        let xj = x.insert(self.j);
        let xij = xi.insert(self.j);
        [(x, xi, self.i), (xj, xij, self.i), (x, xj, self.j), (xi, xij, self.j)]
    }

    /// Counterclockwise polygon under the given generators.
    pub fn polygon(&self, gens: &Gen2) -> [P2; 4] {
        let [x, xi, xj, xij] = self.vertices();
        [gens.point(x), gens.point(xj), gens.point(xij), gens.point(xi)]
    }

    pub fn center(&self, gens: &Gen2) -> P2 {
        let [x, _, _, xij] = self.vertices();
        gens.point(x).midpoint(gens.point(xij))
    }

    /// Image under elementwise complementation (a point reflection of the
    /// zonogon).
    pub fn complement(&self, ground: Ground) -> Rhombus {
        let top = self.base.insert(self.i).insert(self.j);
        Rhombus::new(top.complement_in(ground), self.i, self.j)
    }

    /// Image under the left-right mirror `i -> n + 1 - i`.
    pub fn mirror(&self, ground: Ground) -> Rhombus {
        let n = ground.n();
        let base = self.base.relabel(|e| n + 1 - e);
        Rhombus::new(base, n + 1 - self.j, n + 1 - self.i)
    }
}

/// Hexagon configuration: `Y` has the middle vertex `Xj` present, the
/// upside-down `YInv` has `Xik` present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum HexConfig {
    Y,
    YInv,
}

/// A hexagon `H(X|ijk)` spanned by three rhombi of a tiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hexagon {
    pub base: Subset,
    pub i: u8,
    pub j: u8,
    pub k: u8,
    pub config: HexConfig,
}

impl Hexagon {
    /// The three rhombi spanning the hexagon in its configuration.
    pub fn rhombi(&self) -> [Rhombus; 3] {
        let (x, i, j, k) = (self.base, self.i, self.j, self.k);
        match self.config {
            HexConfig::Y => [
                Rhombus::new(x, i, j),
                Rhombus::new(x, j, k),
                Rhombus::new(x.insert(j), i, k),
            ],
            HexConfig::YInv => [
                Rhombus::new(x, i, k),
                Rhombus::new(x.insert(i), j, k),
                Rhombus::new(x.insert(k), i, j),
            ],
        }
    }

    /// The same hexagon in the opposite configuration.
    pub fn flipped(&self) -> Hexagon {
        let config = match self.config {
            HexConfig::Y => HexConfig::YInv,
            HexConfig::YInv => HexConfig::Y,
        };
        Hexagon { config, ..*self }
    }
}

/// A rhombus tiling, stored purely combinatorially as its set of rhombi.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tiling {
    ground: Ground,
    rhombi: BTreeSet<Rhombus>,
}

impl Tiling {
    /// Build the unique tiling whose spectrum is the given maximal strongly
    /// separated collection: one rhombus per quadruple `X, Xi, Xj, Xij`.
    pub fn from_s_collection(s: &Collection) -> Result<Tiling> {
        let ground = s.ground();
        let need = sep::rank_formula(SepKind::Strong, ground.n()) as usize;
        if s.len() != need {
            return Err(Error::NotMaximal { kind: "strongly", got: s.len(), need });
        }
        if let Some((a, b)) = sep::find_violation(SepKind::Strong, s) {
            return Err(Error::NotSeparated { kind: "strongly", a, b });
        }
        let mut rhombi = BTreeSet::new();
        for x in s.iter() {
            for i in ground.elems().filter(|&i| !x.contains(i)) {
                if !s.contains(x.insert(i)) {
                    continue;
                }
                for j in (i + 1..=ground.n()).filter(|&j| !x.contains(j)) {
                    if s.contains(x.insert(j)) && s.contains(x.insert(i).insert(j)) {
                        rhombi.insert(Rhombus::new(x, i, j));
                    }
                }
            }
        }
        let t = Tiling { ground, rhombi };
        let problems = t.validate(&Gen2::standard(ground));
        if !problems.is_empty() {
            return Err(Error::Invalid(problems));
        }
        Ok(t)
    }

    /// Internal constructor for algorithms that maintain validity themselves.
    pub(crate) fn from_rhombi_unchecked(ground: Ground, rhombi: BTreeSet<Rhombus>) -> Tiling {
        Tiling { ground, rhombi }
    }

    /// The tiling of the intervals of `[n]`.
    pub fn standard(ground: Ground) -> Tiling {
        Tiling::from_s_collection(&Collection::intervals(ground)).expect("intervals tile")
    }

    /// The tiling of the co-intervals of `[n]`.
    pub fn antistandard(ground: Ground) -> Tiling {
        Tiling::from_s_collection(&Collection::co_intervals(ground)).expect("co-intervals tile")
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn rhombi(&self) -> impl Iterator<Item = Rhombus> + '_ {
        self.rhombi.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.rhombi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhombi.is_empty()
    }

    pub fn contains(&self, r: Rhombus) -> bool {
        self.rhombi.contains(&r)
    }

    /// The vertex set of the tiling; the rim vertices are always present.
    pub fn spectrum(&self) -> Collection {
        let mut seen: BTreeSet<Subset> = self.ground.rim_subsets().into_iter().collect();
        for r in &self.rhombi {
            seen.extend(r.vertices());
        }
        Collection::from_subsets(self.ground, seen).expect("vertices fit the ground")
    }

    /// Structural and geometric checks; empty report means valid.
    pub fn validate(&self, gens: &Gen2) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.ground.n();

        let mut per_pair: BTreeMap<(u8, u8), usize> = BTreeMap::new();
        for r in &self.rhombi {
            if r.j > n || !self.ground.contains(r.base) {
                out.push(Violation::new(format!("rhombus {r:?} out of ground")));
                continue;
            }
            *per_pair.entry((r.i, r.j)).or_default() += 1;
        }
        for i in 1..=n {
            for j in i + 1..=n {
                match per_pair.get(&(i, j)).copied().unwrap_or(0) {
                    0 => out.push(Violation::new(format!("missing color pair {i},{j}"))),
                    1 => {}
                    m => out.push(Violation::new(format!("{m} rhombi of color pair {i},{j}"))),
                }
            }
        }

        if n == 1 {
            // Z(1,2) is a segment: no tiles at all
            if !self.rhombi.is_empty() {
                out.push(Violation::new("tiles present on a one-color ground"));
            }
            return out;
        }

        // edge matching: interior edges twice, boundary edges once
        let boundary: BTreeSet<(Subset, Subset)> =
            gens.boundary_edges().into_iter().map(|(a, b, _)| (a, b)).collect();
        let mut edge_count: BTreeMap<(Subset, Subset), usize> = BTreeMap::new();
        for r in &self.rhombi {
            for (a, b, _) in r.edges() {
                *edge_count.entry((a, b)).or_default() += 1;
            }
        }
        for (&(a, b), &m) in &edge_count {
            let on_bd = boundary.contains(&(a, b));
            if on_bd && m != 1 {
                out.push(Violation::new(format!("boundary edge {a}->{b} used {m} times")));
            }
            if !on_bd && m == 1 {
                out.push(Violation::new(format!("interior edge {a}->{b} unmatched")));
            }
            if m > 2 {
                out.push(Violation::new(format!("edge {a}->{b} used {m} times")));
            }
        }
        for &(a, b) in &boundary {
            if !edge_count.contains_key(&(a, b)) {
                out.push(Violation::new(format!("boundary edge {a}->{b} missing")));
            }
        }

        // exact area
        let mut area2 = geom::EpsNum::zero();
        for r in &self.rhombi {
            area2 = area2 + geom::polygon_area2(&r.polygon(gens));
        }
        if area2 != gens.zonogon_area2() {
            out.push(Violation::new("tile areas do not sum to the zonogon area"));
        }

        // pairwise interior disjointness (desk scale)
        let rhombi: Vec<&Rhombus> = self.rhombi.iter().collect();
        if rhombi.len() <= 600 {
            for (t, r) in rhombi.iter().enumerate() {
                let rp = r.polygon(gens);
                for q in &rhombi[t + 1..] {
                    let qp = q.polygon(gens);
                    if geom::convex_interiors_intersect(&rp, &qp) {
                        out.push(Violation::new(format!("tiles {r:?} and {q:?} overlap")));
                    }
                }
            }
        }

        let want = sep::rank_formula(SepKind::Strong, n) as usize;
        if self.spectrum().len() != want {
            out.push(Violation::new(format!(
                "spectrum size {} != {want}",
                self.spectrum().len()
            )));
        }
        out
    }

    /// All hexagons of the requested configuration (`None` for both).
    pub fn hexagons(&self, config: Option<HexConfig>) -> Vec<Hexagon> {
        let n = self.ground.n();
        let mut out = Vec::new();
        for r in &self.rhombi {
            if config != Some(HexConfig::YInv) {
                // treat r as rho(X|ij); look for k > j
                let (x, i, j) = (r.base, r.i, r.j);
                for k in j + 1..=n {
                    if x.contains(k) {
                        continue;
                    }
                    let h = Hexagon { base: x, i, j, k, config: HexConfig::Y };
                    if h.rhombi().iter().all(|r| self.contains(*r)) {
                        out.push(h);
                    }
                }
            }
            if config != Some(HexConfig::Y) {
                // treat r as rho(X|ik); look for i < j < k
                let (x, i, k) = (r.base, r.i, r.j);
                for j in i + 1..k {
                    if x.contains(j) {
                        continue;
                    }
                    let h = Hexagon { base: x, i, j, k, config: HexConfig::YInv };
                    if h.rhombi().iter().all(|r| self.contains(*r)) {
                        out.push(h);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Flip a hexagon: raising on a `Y` (spectrum gains `Xik` for `Xj`),
    /// lowering on a `YInv` (the inverse).
    pub fn strong_flip(&self, hex: &Hexagon) -> Result<Tiling> {
        for r in hex.rhombi() {
            if !self.contains(r) {
                return Err(Error::NotFlippable(format!(
                    "hexagon at {} colors {} {} {} ({:?}) is not in the tiling",
                    hex.base, hex.i, hex.j, hex.k, hex.config
                )));
            }
        }
        let mut rhombi = self.rhombi.clone();
        for r in hex.rhombi() {
            rhombi.remove(&r);
        }
        for r in hex.flipped().rhombi() {
            rhombi.insert(r);
        }
        Ok(Tiling { ground: self.ground, rhombi })
    }

    /// The unique rhombus of a color pair.
    pub fn rhombus_of_colors(&self, i: u8, j: u8) -> Option<Rhombus> {
        self.rhombi.iter().copied().find(|r| r.i == i && r.j == j)
    }

    /// The dual path of color `j`: the polyline through midpoints of
    /// `j`-edges and centers of the rhombi they bound, from the left boundary
    /// to the right boundary.
    pub fn dual_path(&self, j: u8, gens: &Gen2) -> Result<Vec<P2>> {
        let mut on_edge: BTreeMap<(Subset, Subset), Vec<Rhombus>> = BTreeMap::new();
        for r in &self.rhombi {
            for (a, b, c) in r.edges() {
                if c == j {
                    on_edge.entry((a, b)).or_default().push(*r);
                }
            }
        }
        let start_tail = Subset((1u64 << (j - 1)) - 1); // [j-1]
        let mut edge = (start_tail, start_tail.insert(j));
        let mut prev: Option<Rhombus> = None;
        let mut path = Vec::new();
        loop {
            path.push(gens.point(edge.0).midpoint(gens.point(edge.1)));
            let here = on_edge
                .get(&edge)
                .ok_or_else(|| Error::Internal(format!("no rhombus on {}->{}", edge.0, edge.1)))?;
            let next = here.iter().find(|r| Some(**r) != prev);
            let Some(r) = next.copied() else {
                break; // reached the right boundary
            };
            path.push(r.center(gens));
            // the opposite j-edge of r
            let jedges: Vec<(Subset, Subset)> = r
                .edges()
                .iter()
                .filter(|(_, _, c)| *c == j)
                .map(|(a, b, _)| (*a, *b))
                .collect();
            edge = if jedges[0] == edge { jedges[1] } else { jedges[0] };
            prev = Some(r);
        }
        Ok(path)
    }

    /// Inversions computed geometrically: `ijk` is an inversion when the
    /// `ik`-rhombus lies below the dual path `D_j`, tested by tracing `D_j`
    /// and locating the rhombus center in the region under it.
    pub fn inversion_set_geometric(&self, gens: &Gen2) -> Result<BTreeSet<(u8, u8, u8)>> {
        let n = self.ground.n();
        let mut out = BTreeSet::new();
        for j in 2..n {
            // region of the zonogon below D_j
            let mut region: Vec<P2> = Vec::new();
            let mut s = Subset::EMPTY;
            region.push(gens.point(s));
            for e in 1..j {
                s = s.insert(e);
                region.push(gens.point(s));
            }
            region.extend(self.dual_path(j, gens)?);
            let mut s = Subset::EMPTY;
            for e in j + 1..=n {
                s = s.insert(e);
            }
            while !s.is_empty() {
                region.push(gens.point(s));
                s = s.remove(s.min_elem());
            }
            for i in 1..j {
                for k in j + 1..=n {
                    let r = self
                        .rhombus_of_colors(i, k)
                        .ok_or_else(|| Error::Internal(format!("no {i},{k}-rhombus")))?;
                    if geom::point_in_polygon(r.center(gens), &region) {
                        out.insert((i, j, k));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inversions by the bitmask criterion: `ijk` is an inversion iff
    /// `j` is missing from the base of the `ik`-rhombus.
    pub fn inversion_set(&self) -> BTreeSet<(u8, u8, u8)> {
        let mut out = BTreeSet::new();
        for r in &self.rhombi {
            for j in r.i + 1..r.j {
                if !r.base.contains(j) {
                    out.insert((r.i, j, r.j));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Tiling {
        let rhombi = self.rhombi.iter().map(|r| r.complement(self.ground)).collect();
        Tiling { ground: self.ground, rhombi }
    }

    pub fn mirror(&self) -> Tiling {
        let rhombi = self.rhombi.iter().map(|r| r.mirror(self.ground)).collect();
        Tiling { ground: self.ground, rhombi }
    }

    /// Every tiling reachable from `self` by flips (desk scale).
    pub fn flip_component(&self) -> Vec<Tiling> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.clone());
        queue.push_back(self.clone());
        while let Some(t) = queue.pop_front() {
            for h in t.hexagons(None) {
                let next = t.strong_flip(&h).expect("listed hexagon flips");
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(elems: &[u8]) -> Subset {
        Subset::from_elems(elems)
    }

    fn g(n: usize) -> Ground {
        Ground::new(n).unwrap()
    }

    #[test]
    fn standard_3_rhombi() {
        let t = Tiling::standard(g(3));
        let want: BTreeSet<Rhombus> = [
            Rhombus::new(Subset::EMPTY, 1, 2),
            Rhombus::new(Subset::EMPTY, 2, 3),
            Rhombus::new(s(&[2]), 1, 3),
        ]
        .into_iter()
        .collect();
        assert_eq!(t.rhombi.clone(), want);
    }

    #[test]
    fn antistandard_3_rhombi() {
        let t = Tiling::antistandard(g(3));
        let want: BTreeSet<Rhombus> = [
            Rhombus::new(s(&[3]), 1, 2),
            Rhombus::new(s(&[1]), 2, 3),
            Rhombus::new(Subset::EMPTY, 1, 3),
        ]
        .into_iter()
        .collect();
        assert_eq!(t.rhombi.clone(), want);
    }

    #[test]
    fn spectra_and_round_trip() {
        assert_eq!(Tiling::standard(g(3)).spectrum(), Collection::intervals(g(3)));
        assert_eq!(Tiling::standard(g(4)).spectrum().len(), 11);
        assert_eq!(Tiling::standard(g(4)).len(), 6);
        for n in 1..=5 {
            let ints = Collection::intervals(g(n));
            assert_eq!(Tiling::from_s_collection(&ints).unwrap().spectrum(), ints);
        }
    }

    #[test]
    fn antistandard_is_complement_of_standard() {
        for n in 1..=5 {
            assert_eq!(Tiling::standard(g(n)).complement(), Tiling::antistandard(g(n)));
        }
    }

    #[test]
    fn rejects_non_maximal_input() {
        let mut c = Collection::intervals(g(4));
        c.remove(s(&[2]));
        assert!(Tiling::from_s_collection(&c).is_err());
        // right size but not strongly separated: 24 splits around 3
        let mut c = Collection::intervals(g(4));
        c.remove(s(&[1]));
        c.insert(s(&[2, 4])).unwrap();
        assert!(matches!(
            Tiling::from_s_collection(&c),
            Err(Error::NotSeparated { .. })
        ));
    }

    #[test]
    fn hexagons_small() {
        let t = Tiling::standard(g(3));
        let hs = t.hexagons(None);
        assert_eq!(hs.len(), 1);
        assert_eq!(
            hs[0],
            Hexagon { base: Subset::EMPTY, i: 1, j: 2, k: 3, config: HexConfig::Y }
        );
        let t = Tiling::antistandard(g(3));
        let hs = t.hexagons(None);
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].config, HexConfig::YInv);
    }

    #[test]
    fn standard_4_has_only_y_hexagons() {
        let t = Tiling::standard(g(4));
        assert!(!t.hexagons(Some(HexConfig::Y)).is_empty());
        assert!(t.hexagons(Some(HexConfig::YInv)).is_empty());
    }

    #[test]
    fn flip_standard_3_gives_antistandard() {
        let t = Tiling::standard(g(3));
        let h = t.hexagons(None)[0];
        let up = t.strong_flip(&h).unwrap();
        assert_eq!(up, Tiling::antistandard(g(3)));
        // spectra differ by 2 <-> 13
        assert!(t.spectrum().contains(s(&[2])) && !up.spectrum().contains(s(&[2])));
        assert!(up.spectrum().contains(s(&[1, 3])));
        // flipping back is the identity
        let back = up.strong_flip(&up.hexagons(None)[0]).unwrap();
        assert_eq!(back, t);
        // flipping a hexagon that is not there errors
        assert!(t.strong_flip(&h.flipped()).is_err());
    }

    #[test]
    fn inversion_sets() {
        assert!(Tiling::standard(g(5)).inversion_set().is_empty());
        let anti4 = Tiling::antistandard(g(4));
        assert_eq!(anti4.inversion_set().len(), 4);
        // raising flips add exactly one inversion, starting from none
        let mut t = Tiling::standard(g(4));
        let mut size = 0usize;
        while let Some(h) = t.hexagons(Some(HexConfig::Y)).first().copied() {
            t = t.strong_flip(&h).unwrap();
            size += 1;
            assert_eq!(t.inversion_set().len(), size);
        }
        assert_eq!(t, anti4);
        assert_eq!(size, 4); // C(4,3) raising flips from standard to antistandard
    }

    #[test]
    fn geometric_and_bitmask_inversions_agree() {
        let gens = Gen2::standard(g(4));
        for t in Tiling::standard(g(4)).flip_component() {
            assert_eq!(t.inversion_set_geometric(&gens).unwrap(), t.inversion_set());
        }
    }

    #[test]
    fn flip_reachability_n4() {
        let all = Tiling::standard(g(4)).flip_component();
        let max_s = sep::enumerate_maximal_collections(SepKind::Strong, 4).unwrap();
        assert_eq!(all.len(), max_s.len());
        let spectra: BTreeSet<Vec<Subset>> =
            all.iter().map(|t| t.spectrum().members().to_vec()).collect();
        for c in &max_s {
            assert!(spectra.contains(&c.members().to_vec()));
        }
    }

    #[test]
    fn validation_reports() {
        let gens5 = Gen2::standard(g(5));
        assert!(Tiling::standard(g(5)).validate(&gens5).is_empty());

        let gens4 = Gen2::standard(g(4));
        let t = Tiling::standard(g(4));
        let removed = *t.rhombi.iter().next().unwrap();
        let mut broken = t.rhombi.clone();
        broken.remove(&removed);
        let broken = Tiling { ground: g(4), rhombi: broken };
        let report = broken.validate(&gens4);
        assert!(report.iter().any(|v| v.what.contains("missing color pair")));

        // replace rho(2|13) by rho(-|13): same areas, overlapping tiles
        let gens3 = Gen2::standard(g(3));
        let mut rhombi = Tiling::standard(g(3)).rhombi.clone();
        rhombi.remove(&Rhombus::new(s(&[2]), 1, 3));
        rhombi.insert(Rhombus::new(Subset::EMPTY, 1, 3));
        let bad = Tiling { ground: g(3), rhombi };
        let report = bad.validate(&gens3);
        assert!(report.iter().any(|v| v.what.contains("overlap")), "{report:?}");
    }

    #[test]
    fn dual_path_shape() {
        let gens = Gen2::standard(g(4));
        let t = Tiling::standard(g(4));
        for j in 1..=4 {
            let path = t.dual_path(j, &gens).unwrap();
            // n-1 rhombi crossed: midpoints and centers alternate
            assert_eq!(path.len(), 2 * (4 - 1) + 1);
        }
    }
}

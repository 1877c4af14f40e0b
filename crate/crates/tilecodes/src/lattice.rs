//! Archimedean tilings, their periodic lattices, and ray labelings.
//!
//! A tiling ships as a data file (see `data/`) holding the unit cell: vertex
//! classes with positions, edges as `(vertex, slot) -- (vertex, slot)` pairs
//! with an integer cell offset, and the point symmetries about the chosen
//! lattice center as permutation tables. Loaders validate everything they
//! can — degrees, ray bijections, symmetry closure, automorphism property,
//! period invariance — and reject files that fail.
//!
//! A labeling assigns one of {X, Y, Z} to every ray class (a `(vertex class,
//! slot)` pair), canonicalized per vertex class: the first ray is X and the
//! earliest non-X letter, if any, is Y. That normal form enumerates exactly
//! `1 + (3^(n-1) - 1) / 2` assignments per class. Labelings equivalent under
//! a point symmetry of the lattice produce equivalent codes, so the scanner
//! only visits the least labeling of each symmetry orbit (comparing the
//! permuted letter strings directly, smallest ordinal first).

use crate::pauli::{Letter, PauliOperator};
use crate::Error;
use serde::Deserialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

/// Names of the nine tilings shipped with the crate, in the order used
/// throughout.
pub const TILING_NAMES: [&str; 9] = [
    "quadrille",
    "truncated quadrille",
    "snub quadrille",
    "isosnub quadrille",
    "hextille",
    "truncated hextille",
    "deltille",
    "hexadeltille",
    "rhombihexadeltille",
];

const DATA: [(&str, &str); 9] = [
    ("quadrille", include_str!("../data/quadrille.ron")),
    (
        "truncated quadrille",
        include_str!("../data/truncated_quadrille.ron"),
    ),
    ("snub quadrille", include_str!("../data/snub_quadrille.ron")),
    (
        "isosnub quadrille",
        include_str!("../data/isosnub_quadrille.ron"),
    ),
    ("hextille", include_str!("../data/hextille.ron")),
    (
        "truncated hextille",
        include_str!("../data/truncated_hextille.ron"),
    ),
    ("deltille", include_str!("../data/deltille.ron")),
    ("hexadeltille", include_str!("../data/hexadeltille.ron")),
    (
        "rhombihexadeltille",
        include_str!("../data/rhombihexadeltille.ron"),
    ),
];

// ------------------------------------------------------------- file schema

#[derive(Debug, Deserialize)]
struct TilingFile {
    format_version: u32,
    name: String,
    vertex_classes: usize,
    rays_per_vertex: usize,
    /// Real-space translation basis vectors, for documentation and plots.
    basis: [[f64; 2]; 2],
    /// Unit-cell vertex positions in real coordinates, index = class.
    vertices: Vec<[f64; 2]>,
    /// Columns of the integer matrix defining the radius-1 periodic quotient
    /// (in cell coordinates); radius r scales it by r.
    period: [[i64; 2]; 2],
    /// Radii divisible by this put vertices on the boundary corners; reject.
    reject_radius_multiple_of: Option<u32>,
    edges: Vec<EdgeFile>,
    rotation: SymmetryFile,
    rotation_order: u32,
    reflection: Option<SymmetryFile>,
    /// FNV-1a/64 digest of the canonical symmetry-table serialization.
    group_checksum: String,
}

#[derive(Debug, Deserialize)]
struct EdgeFile {
    from: (usize, usize),
    to: (usize, usize),
    offset: [i64; 2],
}

#[derive(Debug, Clone, Deserialize)]
struct SymmetryFile {
    cell_matrix: [[i64; 2]; 2],
    /// Per vertex class: (image class, cell offset of the image).
    vertex_map: Vec<(usize, [i64; 2])>,
    /// Per vertex class: image slot for each slot.
    ray_map: Vec<Vec<usize>>,
}

// ------------------------------------------------------------ tiling model

/// An edge of the unit cell: endpoint `(class, slot)` rays and the cell
/// offset from the first endpoint's cell to the second's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClass {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub offset: [i64; 2],
}

/// One point symmetry about the lattice center, as its action on cells,
/// vertex classes, and ray slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetry {
    pub cell_matrix: [[i64; 2]; 2],
    pub vertex_map: Vec<(usize, [i64; 2])>,
    pub ray_map: Vec<Vec<usize>>,
    pub is_reflection: bool,
}

impl Symmetry {
    fn identity(classes: usize, rays: usize) -> Self {
        Symmetry {
            cell_matrix: [[1, 0], [0, 1]],
            vertex_map: (0..classes).map(|v| (v, [0, 0])).collect(),
            ray_map: (0..classes).map(|_| (0..rays).collect()).collect(),
            is_reflection: false,
        }
    }

    fn compose(&self, then: &Symmetry) -> Symmetry {
        // apply self first, then `then`
        let m = mat_mul(then.cell_matrix, self.cell_matrix);
        let classes = self.vertex_map.len();
        let mut vertex_map = Vec::with_capacity(classes);
        let mut ray_map = Vec::with_capacity(classes);
        for v in 0..classes {
            let (v1, off1) = self.vertex_map[v];
            let (v2, off2) = then.vertex_map[v1];
            let off = vec_add(mat_apply(then.cell_matrix, off1), off2);
            vertex_map.push((v2, off));
            let rays = self.ray_map[v].len();
            let mut rm = Vec::with_capacity(rays);
            for s in 0..rays {
                rm.push(then.ray_map[v1][self.ray_map[v][s]]);
            }
            ray_map.push(rm);
        }
        Symmetry {
            cell_matrix: m,
            vertex_map,
            ray_map,
            is_reflection: self.is_reflection ^ then.is_reflection,
        }
    }

    /// Flat permutation on ray classes (`class * rays + slot`).
    fn ray_class_perm(&self, rays: usize) -> Vec<usize> {
        let mut out = vec![0; self.vertex_map.len() * rays];
        for (v, rm) in self.ray_map.iter().enumerate() {
            let (v2, _) = self.vertex_map[v];
            for (s, &s2) in rm.iter().enumerate() {
                out[v * rays + s] = v2 * rays + s2;
            }
        }
        out
    }
}

fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn mat_apply(m: [[i64; 2]; 2], v: [i64; 2]) -> [i64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

fn vec_add(a: [i64; 2], b: [i64; 2]) -> [i64; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

fn det(m: [[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// A validated tiling specification.
#[derive(Debug)]
pub struct Tiling {
    pub name: String,
    pub vertex_classes: usize,
    pub rays_per_vertex: usize,
    pub basis: [[f64; 2]; 2],
    pub vertex_positions: Vec<[f64; 2]>,
    pub edges: Vec<EdgeClass>,
    pub period: [[i64; 2]; 2],
    pub reject_radius_multiple_of: Option<u32>,
    /// The full point group about the center (identity first).
    pub symmetries: Vec<Symmetry>,
    /// Non-identity flat ray-class permutations, one per symmetry.
    ray_perms: Vec<Vec<usize>>,
    /// Canonical per-class assignments in lexicographic order (X < Y < Z).
    class_assignments: Vec<Vec<Letter>>,
}

impl Tiling {
    /// Looks up one of the nine built-in tilings by name.
    pub fn builtin(name: &str) -> Result<&'static Tiling, Error> {
        static CACHE: OnceLock<HashMap<&'static str, Tiling>> = OnceLock::new();
        let map = CACHE.get_or_init(|| {
            DATA.iter()
                .map(|(name, text)| {
                    let t = Tiling::from_ron(text)
                        .unwrap_or_else(|e| panic!("built-in tiling {name}: {e}"));
                    assert_eq!(t.name, *name, "data file name mismatch");
                    (*name, t)
                })
                .collect()
        });
        map.get(name)
            .ok_or_else(|| Error::UnknownTiling(name.to_string()))
    }

    /// All nine built-in tilings in canonical order.
    pub fn all_builtin() -> Vec<&'static Tiling> {
        TILING_NAMES
            .iter()
            .map(|n| Tiling::builtin(n).expect("built-in"))
            .collect()
    }

    /// Parses and validates a tiling data file.
    pub fn from_ron(text: &str) -> Result<Tiling, Error> {
        let file: TilingFile = ron::from_str(text).map_err(|e| Error::InvalidTilingData {
            name: "<unparsed>".into(),
            reason: e.to_string(),
        })?;
        Tiling::from_file(file)
    }

    fn from_file(file: TilingFile) -> Result<Tiling, Error> {
        let bad = |reason: String| Error::InvalidTilingData {
            name: file.name.clone(),
            reason,
        };
        if file.format_version != 1 {
            return Err(bad(format!("unsupported format_version {}", file.format_version)));
        }
        let m = file.vertex_classes;
        let n = file.rays_per_vertex;
        if file.vertices.len() != m {
            return Err(bad(format!("{} vertices, expected {m}", file.vertices.len())));
        }
        if 2 * file.edges.len() != m * n {
            return Err(bad(format!(
                "{} edges cannot give every vertex degree {n}",
                file.edges.len()
            )));
        }

        // every (class, slot) ray appears exactly once across edge endpoints
        let mut seen = vec![false; m * n];
        for e in &file.edges {
            for &(v, s) in [&e.from, &e.to] {
                if v >= m || s >= n {
                    return Err(bad(format!("edge endpoint ({v},{s}) out of range")));
                }
                if std::mem::replace(&mut seen[v * n + s], true) {
                    return Err(bad(format!("ray ({v},{s}) used by two edge ends")));
                }
            }
        }
        debug_assert!(seen.iter().all(|&b| b));

        if det(file.period) == 0 {
            return Err(bad("period matrix is singular".into()));
        }

        // generate the point group from the rotation (and reflection)
        let check_table = |sym: &SymmetryFile, what: &str| -> Result<(), Error> {
            if sym.vertex_map.len() != m || sym.ray_map.len() != m {
                return Err(bad(format!("{what}: table sizes do not match class count")));
            }
            for (v2, _) in &sym.vertex_map {
                if *v2 >= m {
                    return Err(bad(format!("{what}: vertex image {v2} out of range")));
                }
            }
            for rm in &sym.ray_map {
                let mut hit = vec![false; n];
                if rm.len() != n {
                    return Err(bad(format!("{what}: ray map has wrong arity")));
                }
                for &s in rm {
                    if s >= n || std::mem::replace(&mut hit[s], true) {
                        return Err(bad(format!("{what}: ray map is not a permutation")));
                    }
                }
            }
            Ok(())
        };
        check_table(&file.rotation, "rotation")?;
        if let Some(r) = &file.reflection {
            check_table(r, "reflection")?;
        }

        let rot = Symmetry {
            cell_matrix: file.rotation.cell_matrix,
            vertex_map: file.rotation.vertex_map.clone(),
            ray_map: file.rotation.ray_map.clone(),
            is_reflection: false,
        };
        let mut symmetries = vec![Symmetry::identity(m, n)];
        let mut cur = rot.clone();
        for _ in 1..file.rotation_order {
            symmetries.push(cur.clone());
            cur = cur.compose(&rot);
        }
        if cur != symmetries[0] {
            return Err(bad(format!(
                "rotation does not have order {}",
                file.rotation_order
            )));
        }
        if let Some(refl) = &file.reflection {
            let refl = Symmetry {
                cell_matrix: refl.cell_matrix,
                vertex_map: refl.vertex_map.clone(),
                ray_map: refl.ray_map.clone(),
                is_reflection: true,
            };
            for i in 0..file.rotation_order as usize {
                let g = symmetries[i].compose(&refl);
                symmetries.push(g);
            }
        }

        // closure: composing any two elements stays in the group
        for a in &symmetries {
            for b in &symmetries {
                let c = a.compose(b);
                if !symmetries.contains(&c) {
                    return Err(bad("symmetry tables do not close under composition".into()));
                }
            }
        }

        let edges: Vec<EdgeClass> = file
            .edges
            .iter()
            .map(|e| EdgeClass {
                from: e.from,
                to: e.to,
                offset: e.offset,
            })
            .collect();

        // each symmetry must map edges to edges
        let mut partner: HashMap<(usize, usize), ((usize, usize), [i64; 2])> = HashMap::new();
        for e in &edges {
            partner.insert(e.from, (e.to, e.offset));
            partner.insert(e.to, (e.from, [-e.offset[0], -e.offset[1]]));
        }
        for (gi, g) in symmetries.iter().enumerate() {
            for (&(u, us), &((v, vs), d)) in &partner {
                let (u2, du) = g.vertex_map[u];
                let us2 = g.ray_map[u][us];
                let (v2, dv) = g.vertex_map[v];
                let vs2 = g.ray_map[v][vs];
                let d2 = vec_add(
                    mat_apply(g.cell_matrix, d),
                    [dv[0] - du[0], dv[1] - du[1]],
                );
                match partner.get(&(u2, us2)) {
                    Some(&((pv, pvs), pd)) if (pv, pvs) == (v2, vs2) && pd == d2 => {}
                    _ => {
                        return Err(bad(format!(
                            "symmetry {gi} does not map edge ({u},{us})-({v},{vs}) to an edge"
                        )))
                    }
                }
            }
            // cell matrix must preserve the period lattice
            if !preserves_lattice(g.cell_matrix, file.period) {
                return Err(bad(format!("symmetry {gi} does not preserve the period lattice")));
            }
        }

        // verify the group checksum
        let digest = group_checksum(&symmetries, n);
        if digest != file.group_checksum {
            return Err(bad(format!(
                "group checksum mismatch: file says {}, tables give {digest}",
                file.group_checksum
            )));
        }

        let ray_perms = symmetries
            .iter()
            .skip(1)
            .map(|g| g.ray_class_perm(n))
            .collect();

        Ok(Tiling {
            name: file.name,
            vertex_classes: m,
            rays_per_vertex: n,
            basis: file.basis,
            vertex_positions: file.vertices,
            edges,
            period: file.period,
            reject_radius_multiple_of: file.reject_radius_multiple_of,
            symmetries,
            ray_perms,
            class_assignments: canonical_assignments(n),
        })
    }

    /// Closed-form count of canonical labelings:
    /// `(1 + (3^(n-1) - 1) / 2)^m`.
    pub fn total_labelings(&self) -> u64 {
        let per = self.labelings_per_class() as u64;
        per.pow(self.vertex_classes as u32)
    }

    pub fn labelings_per_class(&self) -> usize {
        self.class_assignments.len()
    }

    /// Qubits in the radius-`r` lattice.
    pub fn qubits_at_radius(&self, radius: u32) -> u64 {
        let cells = det(self.period).unsigned_abs() * u64::from(radius) * u64::from(radius);
        cells * self.vertex_classes as u64
    }

    /// The labeling with the given ordinal (mixed radix over vertex classes,
    /// class 0 most significant).
    pub fn labeling(&self, ordinal: u64) -> Result<Labeling, Error> {
        if ordinal >= self.total_labelings() {
            return Err(Error::BadLabeling {
                text: ordinal.to_string(),
                reason: format!("ordinal out of range (< {})", self.total_labelings()),
            });
        }
        let per = self.labelings_per_class() as u64;
        let m = self.vertex_classes;
        let mut digits = vec![0usize; m];
        let mut rest = ordinal;
        for i in (0..m).rev() {
            digits[i] = (rest % per) as usize;
            rest /= per;
        }
        let mut letters = Vec::with_capacity(m * self.rays_per_vertex);
        for &d in &digits {
            letters.extend_from_slice(&self.class_assignments[d]);
        }
        Ok(Labeling { letters, ordinal })
    }

    /// Streams every canonical labeling in ordinal order.
    pub fn enumerate_labelings(&self) -> impl Iterator<Item = Labeling> + '_ {
        (0..self.total_labelings()).map(|i| self.labeling(i).expect("ordinal in range"))
    }

    /// True when no point symmetry sends the labeling to a lexicographically
    /// smaller letter string. Exactly the representatives get scanned.
    ///
    /// The comparison is on raw permuted strings, which deduplicates most but
    /// not all of each symmetry orbit; survivors of one orbit always share
    /// code invariants, so nothing is lost, only a little work repeated.
    pub fn is_orbit_representative(&self, labeling: &Labeling) -> bool {
        let letters = &labeling.letters;
        let mut image = vec![Letter::X; letters.len()];
        for perm in &self.ray_perms {
            for (i, &dst) in perm.iter().enumerate() {
                image[dst] = letters[i];
            }
            if image.as_slice() < letters.as_slice() {
                return false;
            }
        }
        true
    }

    /// The labeling carried forward by a symmetry (not re-canonicalized).
    pub fn apply_symmetry(&self, labeling: &Labeling, symmetry: &Symmetry) -> Vec<Letter> {
        let perm = symmetry.ray_class_perm(self.rays_per_vertex);
        let mut image = vec![Letter::X; labeling.letters.len()];
        for (i, &dst) in perm.iter().enumerate() {
            image[dst] = labeling.letters[i];
        }
        image
    }

    /// Parses the canonical string form (classes joined with `|`) and checks
    /// canonicality.
    pub fn parse_labeling(&self, text: &str) -> Result<Labeling, Error> {
        let bad = |reason: String| Error::BadLabeling {
            text: text.to_string(),
            reason,
        };
        let parts: Vec<&str> = text.split('|').collect();
        if parts.len() != self.vertex_classes {
            return Err(bad(format!(
                "expected {} class groups, found {}",
                self.vertex_classes,
                parts.len()
            )));
        }
        let per = self.labelings_per_class() as u64;
        let mut ordinal = 0u64;
        let mut letters = Vec::with_capacity(self.vertex_classes * self.rays_per_vertex);
        for part in parts {
            let assignment: Vec<Letter> = part
                .chars()
                .map(|c| Letter::from_char(c).ok_or_else(|| bad(format!("bad letter {c:?}"))))
                .collect::<Result<_, _>>()?;
            if assignment.len() != self.rays_per_vertex {
                return Err(bad(format!(
                    "class group {part:?} has {} rays, expected {}",
                    assignment.len(),
                    self.rays_per_vertex
                )));
            }
            let rank = self
                .class_assignments
                .binary_search(&assignment)
                .map_err(|_| bad(format!("class group {part:?} is not canonical")))?;
            ordinal = ordinal * per + rank as u64;
            letters.extend_from_slice(&assignment);
        }
        Ok(Labeling { letters, ordinal })
    }

    /// Renders a labeling in the canonical string form.
    pub fn format_labeling(&self, labeling: &Labeling) -> String {
        let mut out = String::new();
        for (i, chunk) in labeling.letters.chunks(self.rays_per_vertex).enumerate() {
            if i > 0 {
                out.push('|');
            }
            out.extend(chunk.iter().map(|l| l.to_char()));
        }
        out
    }
}

/// Per-class canonical assignments (first ray X, earliest non-X letter Y) in
/// lexicographic order with X < Y < Z.
fn canonical_assignments(rays: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut tail = vec![0u8; rays - 1];
    loop {
        let mut first_non_x = None;
        for &t in &tail {
            if t != 0 {
                first_non_x = Some(t);
                break;
            }
        }
        if first_non_x != Some(2) {
            let mut letters = Vec::with_capacity(rays);
            letters.push(Letter::X);
            letters.extend(tail.iter().map(|&t| [Letter::X, Letter::Y, Letter::Z][t as usize]));
            out.push(letters);
        }
        let mut k = rays - 1;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if tail[k] < 2 {
                tail[k] += 1;
                break;
            }
            tail[k] = 0;
        }
    }
}

fn preserves_lattice(m: [[i64; 2]; 2], period: [[i64; 2]; 2]) -> bool {
    // columns of period generate L; M L = L iff period^-1 * M * period is
    // integral with determinant +-1
    let d = det(period);
    let adj = [
        [period[1][1], -period[0][1]],
        [-period[1][0], period[0][0]],
    ];
    let prod = mat_mul(mat_mul(adj, m), period);
    if prod.iter().flatten().any(|&x| x % d != 0) {
        return false;
    }
    let reduced = [
        [prod[0][0] / d, prod[0][1] / d],
        [prod[1][0] / d, prod[1][1] / d],
    ];
    det(reduced).abs() == 1
}

/// FNV-1a/64 digest of the canonical serialization of the full symmetry
/// group: each non-identity element's flat ray permutation, cell matrix, and
/// vertex offsets, sorted.
pub fn group_checksum(symmetries: &[Symmetry], rays: usize) -> String {
    let mut lines: Vec<String> = symmetries
        .iter()
        .skip(1)
        .map(|g| {
            let perm = g.ray_class_perm(rays);
            let perm_s: Vec<String> = perm.iter().map(|p| p.to_string()).collect();
            let cm = g.cell_matrix;
            let vm: Vec<String> = g
                .vertex_map
                .iter()
                .map(|(v, o)| format!("{v}:{},{}", o[0], o[1]))
                .collect();
            format!(
                "{}|{} {} {} {}|{}|{}",
                if g.is_reflection { "r" } else { "p" },
                cm[0][0],
                cm[0][1],
                cm[1][0],
                cm[1][1],
                vm.join(";"),
                perm_s.join(",")
            )
        })
        .collect();
    lines.sort();
    let mut hash: u64 = 0xcbf29ce484222325;
    for line in &lines {
        for b in line.as_bytes() {
            hash ^= u64::from(*b);
            hash = hash.wrapping_mul(0x100000001b3);
        }
        hash ^= u64::from(b'\n');
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

/// A canonical ray-class labeling with its rank in the enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    /// Flat letters, class-major, slots in stored ray order.
    pub letters: Vec<Letter>,
    pub ordinal: u64,
}

// -------------------------------------------------------- periodic lattice

/// A tiling instantiated on a torus at integer radius.
#[derive(Debug)]
pub struct PeriodicLattice {
    pub tiling: &'static Tiling,
    pub radius: u32,
    pub num_vertices: usize,
    /// Edge instances as (qubit, ray class, qubit, ray class).
    pub edges: Vec<LatticeEdge>,
    hnf: Hnf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeEdge {
    pub vertex_a: usize,
    pub ray_a: usize,
    pub vertex_b: usize,
    pub ray_b: usize,
}

/// Column Hermite normal form `[(a, 0), (b, c)]` of the period lattice, used
/// to canonicalize cell coordinates.
#[derive(Debug, Clone, Copy)]
struct Hnf {
    a: i64,
    b: i64,
    c: i64,
}

impl Hnf {
    /// `period` is a true row-major matrix whose columns generate the lattice.
    fn of(period: [[i64; 2]; 2]) -> Hnf {
        let u = [period[0][0], period[1][0]];
        let v = [period[0][1], period[1][1]];
        let d = det(period).abs();
        // second HNF column: y-component = gcd of the two y-components
        let (g, s, t) = egcd(u[1], v[1]);
        debug_assert!(g > 0, "period matrix must be non-singular");
        let (b, c) = (s * u[0] + t * v[0], g);
        debug_assert_eq!(d % c, 0);
        let a = d / c;
        Hnf { a, b: b.rem_euclid(a), c }
    }

    fn reduce(&self, x: i64, y: i64) -> (i64, i64) {
        let j = y.div_euclid(self.c);
        ((x - j * self.b).rem_euclid(self.a), y.rem_euclid(self.c))
    }

    fn cells(&self) -> i64 {
        self.a * self.c
    }
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = egcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

impl PeriodicLattice {
    /// Builds the radius-`r` periodic lattice. The quotient is by `r` times
    /// the tiling's period lattice, which every point symmetry preserves.
    pub fn build(tiling: &'static Tiling, radius: u32) -> Result<PeriodicLattice, Error> {
        if radius == 0 {
            return Err(Error::InvalidRadius {
                tiling: tiling.name.clone(),
                radius,
                reason: "radius must be at least 1".into(),
            });
        }
        if let Some(k) = tiling.reject_radius_multiple_of {
            if radius % k == 0 {
                return Err(Error::InvalidRadius {
                    tiling: tiling.name.clone(),
                    radius,
                    reason: format!(
                        "radius multiples of {k} put vertices on the boundary corners"
                    ),
                });
            }
        }
        let r = i64::from(radius);
        let scaled = [
            [tiling.period[0][0] * r, tiling.period[0][1] * r],
            [tiling.period[1][0] * r, tiling.period[1][1] * r],
        ];
        let hnf = Hnf::of(scaled);
        let m = tiling.vertex_classes;
        let num_vertices = (hnf.cells() as usize) * m;

        let vid = |x: i64, y: i64, class: usize| -> usize {
            let (rx, ry) = hnf.reduce(x, y);
            ((rx * hnf.c + ry) as usize) * m + class
        };

        let n = tiling.rays_per_vertex;
        let mut edges = Vec::with_capacity((hnf.cells() as usize) * tiling.edges.len());
        for x in 0..hnf.a {
            for y in 0..hnf.c {
                for e in &tiling.edges {
                    let (u, us) = e.from;
                    let (v, vs) = e.to;
                    edges.push(LatticeEdge {
                        vertex_a: vid(x, y, u),
                        ray_a: u * n + us,
                        vertex_b: vid(x + e.offset[0], y + e.offset[1], v),
                        ray_b: v * n + vs,
                    });
                }
            }
        }
        Ok(PeriodicLattice {
            tiling,
            radius,
            num_vertices,
            edges,
            hnf,
        })
    }

    /// The image of a vertex under one of the tiling's point symmetries.
    pub fn apply_symmetry_to_vertex(&self, symmetry: &Symmetry, vertex: usize) -> usize {
        let m = self.tiling.vertex_classes;
        let cell_id = (vertex / m) as i64;
        let class = vertex % m;
        let (x, y) = (cell_id / self.hnf.c, cell_id % self.hnf.c);
        let (v2, off) = symmetry.vertex_map[class];
        let img = vec_add(mat_apply(symmetry.cell_matrix, [x, y]), off);
        let (rx, ry) = self.hnf.reduce(img[0], img[1]);
        ((rx * self.hnf.c + ry) as usize) * m + v2
    }

    /// Converts a labeling into one 2-body measurement per edge: the product
    /// of the two single-qubit letters named by the edge's rays. Degenerate
    /// wrapped edges whose endpoints coincide multiply onto one qubit.
    pub fn measurements(&self, labeling: &Labeling) -> Vec<PauliOperator> {
        self.edges
            .iter()
            .map(|e| {
                let mut op = PauliOperator::identity(self.num_vertices);
                op.apply_letter(labeling.letters[e.ray_a], e.vertex_a);
                op.apply_letter(labeling.letters[e.ray_b], e.vertex_b);
                op
            })
            .collect()
    }
}

impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} classes, {} rays, |G| = {})",
            self.name,
            self.vertex_classes,
            self.rays_per_vertex,
            self.symmetries.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tilings_load_and_validate() {
        assert_eq!(Tiling::all_builtin().len(), 9);
    }

    #[test]
    fn total_labelings_closed_form() {
        let expected: [(&str, u64); 9] = [
            ("quadrille", 14),
            ("truncated quadrille", 625),
            ("snub quadrille", 2_825_761),
            ("isosnub quadrille", 1681),
            ("hextille", 25),
            ("truncated hextille", 15_625),
            ("deltille", 122),
            ("hexadeltille", 2744),
            ("rhombihexadeltille", 7_529_536),
        ];
        for (name, want) in expected {
            assert_eq!(Tiling::builtin(name).unwrap().total_labelings(), want, "{name}");
        }
    }

    #[test]
    fn first_labeling_is_all_x() {
        let t = Tiling::builtin("quadrille").unwrap();
        let l = t.labeling(0).unwrap();
        assert!(l.letters.iter().all(|&c| c == Letter::X));
        assert_eq!(t.format_labeling(&l), "XXXX");
    }

    #[test]
    fn labeling_string_round_trip() {
        let t = Tiling::builtin("hextille").unwrap();
        for l in t.enumerate_labelings() {
            let s = t.format_labeling(&l);
            let back = t.parse_labeling(&s).unwrap();
            assert_eq!(back, l);
        }
        assert!(t.parse_labeling("XXX|XXQ").is_err());
        assert!(t.parse_labeling("XXX").is_err());
        assert!(t.parse_labeling("XXZ|XXX").is_err(), "non-canonical class");
    }

    #[test]
    fn vertex_counts_match_scanned_sizes() {
        let sizes: [(&str, u32, u64); 9] = [
            ("quadrille", 4, 64),
            ("truncated quadrille", 6, 576),
            ("snub quadrille", 5, 200),
            ("isosnub quadrille", 8, 768),
            ("hextille", 10, 600),
            ("truncated hextille", 5, 600),
            ("deltille", 8, 256),
            ("hexadeltille", 3, 108),
            ("rhombihexadeltille", 3, 162),
        ];
        for (name, r, want) in sizes {
            let t = Tiling::builtin(name).unwrap();
            assert_eq!(t.qubits_at_radius(r), want, "{name}");
            let lat = PeriodicLattice::build(t, r).unwrap();
            assert_eq!(lat.num_vertices as u64, want, "{name}");
        }
    }

    #[test]
    fn vertex_degrees_are_uniform() {
        for t in Tiling::all_builtin() {
            let r = if t.reject_radius_multiple_of == Some(3) { 2 } else { 3 };
            let lat = PeriodicLattice::build(t, r).unwrap();
            let mut deg = vec![0usize; lat.num_vertices];
            for e in &lat.edges {
                deg[e.vertex_a] += 1;
                deg[e.vertex_b] += 1;
            }
            assert!(
                deg.iter().all(|&d| d == t.rays_per_vertex),
                "{}: degree broken",
                t.name
            );
        }
    }

    #[test]
    fn deltille_rejects_radius_multiples_of_three() {
        let t = Tiling::builtin("deltille").unwrap();
        assert!(PeriodicLattice::build(t, 3).is_err());
        assert!(PeriodicLattice::build(t, 6).is_err());
        assert!(PeriodicLattice::build(t, 2).is_ok());
        assert!(PeriodicLattice::build(t, 0).is_err());
    }

    #[test]
    fn quadrille_measurements_all_x() {
        let t = Tiling::builtin("quadrille").unwrap();
        let lat = PeriodicLattice::build(t, 2).unwrap();
        let all_x = t.labeling(0).unwrap();
        for op in lat.measurements(&all_x) {
            assert_eq!(op.weight(), 2);
            assert_eq!(op.to_string().replace('I', "").as_str(), "XX");
        }
    }

    #[test]
    fn degenerate_wrap_stays_within_weight_two() {
        // radius-1 lattices can wrap an edge back onto one vertex
        for t in Tiling::all_builtin() {
            let lat = PeriodicLattice::build(t, 1).unwrap();
            for l in t.enumerate_labelings().take(5) {
                for op in lat.measurements(&l) {
                    assert!(op.weight() <= 2);
                }
            }
        }
    }

    #[test]
    fn corrupted_data_is_rejected() {
        let good = include_str!("../data/quadrille.ron");
        let tampered = good.replace("ray_map: [[1, 2, 3, 0]]", "ray_map: [[1, 2, 0, 3]]");
        assert!(tampered != good);
        assert!(Tiling::from_ron(&tampered).is_err());
    }
}

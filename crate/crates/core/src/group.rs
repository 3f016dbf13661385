//! Finite (possibly non-abelian) groups given by Cayley tables, together with
//! catalogs of unitary irreducible representations. Catalogs are shipped with
//! the built-in groups and validated on construction, not computed.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{bail_invalid, Error, Result};
use crate::numerics::{CMatrix, CVector};

/// A finite group of order n with elements indexed 0..n. The table stores
/// `cayley[x][y] = x·y`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validate a Cayley table: Latin square, two-sided identity, inverses,
    /// associativity (all triples for n ≤ 64, a large random sample above).
    pub fn new(cayley: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            bail_invalid!("empty Cayley table");
        }
        for row in &cayley {
            if row.len() != n {
                bail_invalid!("Cayley table is not square");
            }
            if row.iter().any(|&e| e >= n) {
                bail_invalid!("Cayley table entry out of range");
            }
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut seen_row[cayley[i][j]], true) {
                    bail_invalid!("row {i} of the Cayley table is not a permutation");
                }
                if std::mem::replace(&mut seen_col[cayley[j][i]], true) {
                    bail_invalid!("column {i} of the Cayley table is not a permutation");
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| cayley[e][x] == x && cayley[x][e] == x))
            .ok_or_else(|| Error::InvalidArgument("no two-sided identity".into()))?;
        let mut inverse = vec![0usize; n];
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| cayley[x][y] == identity && cayley[y][x] == identity)
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("element {x} has no two-sided inverse"))
                })?;
            inverse[x] = inv;
        }
        let check = |x: usize, y: usize, z: usize| cayley[cayley[x][y]][z] == cayley[x][cayley[y][z]];
        if n <= 64 {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !check(x, y, z) {
                            bail_invalid!("associativity fails at ({x},{y},{z})");
                        }
                    }
                }
            }
        } else {
            // deterministic pseudo-random sample of triples
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..200_000 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let x = (state >> 16) as usize % n;
                let y = (state >> 32) as usize % n;
                let z = (state >> 48) as usize % n;
                if !check(x, y, z) {
                    bail_invalid!("associativity fails at ({x},{y},{z})");
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(_) => bail_invalid!("label count does not match the group order"),
            None => (0..n).map(|i| format!("g{i}")).collect(),
        };
        Ok(FiniteGroup {
            order: n,
            cayley,
            inverse,
            identity,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cayley[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    /// δ_x as a function on the group.
    pub fn delta(&self, x: usize) -> CVector {
        let mut v = CVector::zeros(self.order);
        v[x] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn indicator(&self, members: &[usize]) -> CVector {
        let mut v = CVector::zeros(self.order);
        for &m in members {
            v[m] = Complex64::new(1.0, 0.0);
        }
        v
    }

    /// Closure of a generating set.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(g, x)] {
                    if !in_set[y] {
                        in_set[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        (0..self.order).filter(|&i| in_set[i]).collect()
    }
}

/// One unitary irreducible representation: a d×d unitary matrix per element.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub dim: usize,
    pub matrices: Vec<CMatrix>,
}

/// A complete list of irreps for a group (Σ dᵢ² = n).
#[derive(Clone, Debug)]
pub struct IrrepCatalog {
    pub reps: Vec<Irrep>,
}

impl IrrepCatalog {
    /// Check the catalog against the group: each ρ is a homomorphism with
    /// unitary values, dimensions square-sum to the order, and the matrix
    /// entries satisfy the Schur orthogonality relations.
    pub fn validate(&self, group: &FiniteGroup) -> Result<()> {
        let n = group.order();
        let dim_sq: usize = self.reps.iter().map(|r| r.dim * r.dim).sum();
        if dim_sq != n {
            bail_invalid!("irrep dimensions square-sum to {dim_sq}, expected {n}");
        }
        for (ri, rep) in self.reps.iter().enumerate() {
            if rep.matrices.len() != n {
                bail_invalid!("irrep {ri} has {} matrices, expected {n}", rep.matrices.len());
            }
            for (x, m) in rep.matrices.iter().enumerate() {
                if m.nrows() != rep.dim || m.ncols() != rep.dim {
                    bail_invalid!("irrep {ri} matrix {x} has wrong shape");
                }
                let defect = (m.adjoint() * m - CMatrix::identity(rep.dim, rep.dim))
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                if defect > 1e-10 {
                    bail_invalid!("irrep {ri} is not unitary at element {x} (defect {defect:.3e})");
                }
            }
            for x in 0..n {
                for y in 0..n {
                    let prod = &rep.matrices[x] * &rep.matrices[y];
                    let defect = (&prod - &rep.matrices[group.mul(x, y)])
                        .iter()
                        .map(|z| z.norm())
                        .fold(0.0, f64::max);
                    if defect > 1e-10 {
                        bail_invalid!(
                            "irrep {ri} is not a homomorphism at ({x},{y}) (defect {defect:.3e})"
                        );
                    }
                }
            }
        }
        // Schur orthogonality of matrix-entry vectors: ⟨c, c'⟩ = (n/dᵢ)·δ
        let vectors = matrix_entry_vectors_unchecked(self);
        for (a, (ia, va)) in vectors.iter().enumerate() {
            for (b, (ib, vb)) in vectors.iter().enumerate() {
                let inner: Complex64 = va.dotc(vb);
                let expect = if a == b {
                    n as f64 / self.reps[*ia].dim as f64
                } else {
                    0.0
                };
                if (inner - Complex64::new(expect, 0.0)).norm() > 1e-9 * n as f64 {
                    bail_invalid!(
                        "matrix-entry orthogonality fails between vectors {a} and {b} \
                         (reps {ia}, {ib})"
                    );
                }
            }
        }
        Ok(())
    }
}

/// The vectors x ↦ (ρᵢ(x))_{jk}, tagged with their rep index, in the fixed
/// tuple order used throughout: i outer, then the copy index k, then j.
pub(crate) fn matrix_entry_vectors_unchecked(cat: &IrrepCatalog) -> Vec<(usize, CVector)> {
    let n: usize = cat.reps.iter().map(|r| r.matrices.len()).max().unwrap_or(0);
    let mut out = Vec::new();
    for (i, rep) in cat.reps.iter().enumerate() {
        for k in 0..rep.dim {
            for j in 0..rep.dim {
                let v = CVector::from_fn(n, |x, _| rep.matrices[x][(j, k)]);
                out.push((i, v));
            }
        }
    }
    out
}

fn root_of_unity(num: i64, den: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU * num as f64 / den as f64)
}

/// Z_n with its characters.
pub fn cyclic(n: usize) -> Result<(FiniteGroup, IrrepCatalog)> {
    if n < 1 {
        bail_invalid!("cyclic group needs n >= 1");
    }
    let cayley = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    let labels = (0..n).map(|a| format!("r{a}")).collect();
    let group = FiniteGroup::new(cayley, Some(labels))?;
    let reps = (0..n)
        .map(|h| Irrep {
            dim: 1,
            matrices: (0..n)
                .map(|x| CMatrix::from_element(1, 1, root_of_unity((h * x) as i64, n)))
                .collect(),
        })
        .collect();
    let cat = IrrepCatalog { reps };
    cat.validate(&group)?;
    Ok((group, cat))
}

/// Direct product of cyclic groups, elements in mixed radix (last factor
/// fastest), with the product characters.
pub fn product_of_cyclics(factors: &[usize]) -> Result<(FiniteGroup, IrrepCatalog)> {
    let abelian = crate::construct::FiniteAbelianGroup::new(factors.to_vec())?;
    let n = abelian.order();
    let cayley = (0..n)
        .map(|x| (0..n).map(|y| abelian.add(x, y)).collect())
        .collect();
    let labels = (0..n)
        .map(|x| {
            let t = abelian.index_to_tuple(x);
            format!(
                "({})",
                t.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    let group = FiniteGroup::new(cayley, Some(labels))?;
    let reps = (0..n)
        .map(|chi| {
            let tc = abelian.index_to_tuple(chi);
            Irrep {
                dim: 1,
                matrices: (0..n)
                    .map(|x| {
                        let tx = abelian.index_to_tuple(x);
                        let phase: f64 = tc
                            .iter()
                            .zip(&tx)
                            .zip(abelian.factors())
                            .map(|((&c, &x), &f)| (c * x % f) as f64 / f as f64)
                            .sum();
                        CMatrix::from_element(1, 1, Complex64::from_polar(1.0, TAU * phase))
                    })
                    .collect(),
            }
        })
        .collect();
    let cat = IrrepCatalog { reps };
    cat.validate(&group)?;
    Ok((group, cat))
}

/// Dihedral group of order 2n (n ≥ 3): element s^b r^a is indexed b·n + a.
pub fn dihedral(n: usize) -> Result<(FiniteGroup, IrrepCatalog)> {
    if n < 3 {
        bail_invalid!("dihedral group implemented for n >= 3, got {n}");
    }
    let order = 2 * n;
    let idx = |b: usize, a: usize| b * n + a % n;
    let mut cayley = vec![vec![0usize; order]; order];
    for b1 in 0..2 {
        for a1 in 0..n {
            for b2 in 0..2 {
                for a2 in 0..n {
                    // s^{b1} r^{a1} · s^{b2} r^{a2} = s^{b1+b2} r^{(-1)^{b2} a1 + a2}
                    let a = if b2 == 0 { (a1 + a2) % n } else { (n - a1 + a2) % n };
                    cayley[idx(b1, a1)][idx(b2, a2)] = idx((b1 + b2) % 2, a);
                }
            }
        }
    }
    let labels = (0..order)
        .map(|i| {
            let (b, a) = (i / n, i % n);
            match (b, a) {
                (0, 0) => "e".to_string(),
                (0, a) => format!("r{a}"),
                (_, 0) => "s".to_string(),
                (_, a) => format!("sr{a}"),
            }
        })
        .collect();
    let group = FiniteGroup::new(cayley, Some(labels))?;

    let mut reps = Vec::new();
    // one-dimensional: trivial and sign-of-reflection always; two more when n
    // is even (parity of the rotation exponent survives conjugation)
    let one_dim = |f: &dyn Fn(usize, usize) -> f64| Irrep {
        dim: 1,
        matrices: (0..order)
            .map(|i| CMatrix::from_element(1, 1, Complex64::new(f(i / n, i % n), 0.0)))
            .collect(),
    };
    reps.push(one_dim(&|_, _| 1.0));
    reps.push(one_dim(&|b, _| if b == 0 { 1.0 } else { -1.0 }));
    if n % 2 == 0 {
        reps.push(one_dim(&|_, a| if a % 2 == 0 { 1.0 } else { -1.0 }));
        reps.push(one_dim(&|b, a| if (a + b) % 2 == 0 { 1.0 } else { -1.0 }));
    }
    // two-dimensional: ρ_h(r^a) = diag(ω^{ha}, ω^{-ha}),
    // ρ_h(s r^a) = [[0, ω^{-ha}], [ω^{ha}, 0]] for 0 < h < n/2
    let h_max = if n % 2 == 0 { n / 2 } else { n.div_ceil(2) };
    for h in 1..h_max {
        let matrices = (0..order)
            .map(|i| {
                let (b, a) = (i / n, i % n);
                let w = root_of_unity((h * a) as i64, n);
                let zero = Complex64::new(0.0, 0.0);
                if b == 0 {
                    CMatrix::from_row_slice(2, 2, &[w, zero, zero, w.conj()])
                } else {
                    CMatrix::from_row_slice(2, 2, &[zero, w.conj(), w, zero])
                }
            })
            .collect();
        reps.push(Irrep { dim: 2, matrices });
    }
    let cat = IrrepCatalog { reps };
    cat.validate(&group)?;
    Ok((group, cat))
}

/// The quaternion group Q8 = {±1, ±i, ±j, ±k}, indexed
/// [1, -1, i, -i, j, -j, k, -k].
pub fn quaternion() -> Result<(FiniteGroup, IrrepCatalog)> {
    // multiply units 1=0, i=1, j=2, k=3 with a sign
    fn unit_mul(u: usize, v: usize) -> (usize, bool) {
        match (u, v) {
            (0, v) => (v, false),
            (u, 0) => (u, false),
            (u, v) if u == v => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    let idx = |u: usize, neg: bool| 2 * u + neg as usize;
    let mut cayley = vec![vec![0usize; 8]; 8];
    for x in 0..8 {
        for y in 0..8 {
            let (u, nu) = (x / 2, x % 2 == 1);
            let (v, nv) = (y / 2, y % 2 == 1);
            let (w, flip) = unit_mul(u, v);
            cayley[x][y] = idx(w, nu ^ nv ^ flip);
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let group = FiniteGroup::new(cayley, Some(labels))?;

    // four one-dimensional irreps factor through Q8/{±1} ≅ Z2×Z2
    let mut reps: Vec<Irrep> = Vec::new();
    for (ei, ej) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let value = move |x: usize| match x / 2 {
            0 => 1.0,
            1 => ei,
            2 => ej,
            _ => ei * ej,
        };
        reps.push(Irrep {
            dim: 1,
            matrices: (0..8)
                .map(|x| CMatrix::from_element(1, 1, Complex64::new(value(x), 0.0)))
                .collect(),
        });
    }
    // the faithful 2-dimensional irrep
    let im = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let base = [
        CMatrix::identity(2, 2),
        CMatrix::from_row_slice(2, 2, &[im, zero, zero, -im]),
        CMatrix::from_row_slice(2, 2, &[zero, one, -one, zero]),
        CMatrix::from_row_slice(2, 2, &[zero, im, im, zero]),
    ];
    let matrices = (0..8)
        .map(|x| {
            let m = base[x / 2].clone();
            if x % 2 == 1 {
                -m
            } else {
                m
            }
        })
        .collect();
    reps.push(Irrep { dim: 2, matrices });
    let cat = IrrepCatalog { reps };
    cat.validate(&group)?;
    Ok((group, cat))
}

/// The symmetric group S3 (as the dihedral group of order 6, with permutation
/// labels: r = (123), s = (12)).
pub fn symmetric_s3() -> Result<(FiniteGroup, IrrepCatalog)> {
    let (group, cat) = dihedral(3)?;
    let labels = ["e", "(123)", "(132)", "(12)", "(23)", "(13)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let group = FiniteGroup::new(group.cayley().to_vec(), Some(labels))?;
    Ok((group, cat))
}

/// Look up a built-in group/catalog by name: `z<n>`, `z<a>x<b>...`,
/// `dihedral<n>` (or `d<n>`), `q8`, `s3`.
pub fn builtin(name: &str) -> Result<(FiniteGroup, IrrepCatalog)> {
    let name = name.to_ascii_lowercase();
    if name == "q8" {
        return quaternion();
    }
    if name == "s3" {
        return symmetric_s3();
    }
    if let Some(rest) = name.strip_prefix("dihedral").or_else(|| name.strip_prefix('d')) {
        if let Ok(n) = rest.parse::<usize>() {
            return dihedral(n);
        }
    }
    if let Some(rest) = name.strip_prefix('z') {
        let parts: Vec<&str> = rest.split('x').collect();
        let factors: Result<Vec<usize>> = parts
            .iter()
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad group name {name}")))
            })
            .collect();
        let factors = factors?;
        if factors.len() == 1 {
            return cyclic(factors[0]);
        }
        return product_of_cyclics(&factors);
    }
    bail_invalid!("unknown group {name} (try z6, z2x3, dihedral4, q8, s3)")
}

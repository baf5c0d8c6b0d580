use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::alexander::GroupWord;
use crate::error::{Error, Result};
use crate::knot_model::{KnotDiagram, Presentation};
use crate::laurent::linalg::{field_det, nullspace};
use crate::laurent::{is_prime, Coeff, Fp, PrimeField};

/// Square matrix over a prime field.
pub type FMat = Vec<Vec<Fp>>;

pub fn f_identity(m: usize, f: PrimeField) -> FMat {
    (0..m)
        .map(|i| (0..m).map(|j| f.elem((i == j) as i64)).collect())
        .collect()
}

pub fn f_mul(a: &FMat, b: &FMat) -> FMat {
    let m = a.len();
    let f = a.first().and_then(|r| r.first()).map(|x| x.field());
    (0..m)
        .map(|i| {
            (0..b[0].len())
                .map(|j| {
                    (0..b.len()).fold(f.expect("nonempty").elem(0), |acc, k| {
                        acc.add(&a[i][k].mul(&b[k][j]))
                    })
                })
                .collect()
        })
        .collect()
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn f_inverse(a: &FMat, f: PrimeField) -> Option<FMat> {
    let m = a.len();
    let mut aug: Vec<Vec<Fp>> = a
        .iter()
        .zip(f_identity(m, f))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for c in 0..m {
        let p = (c..m).find(|&r| !aug[r][c].is_zero())?;
        aug.swap(p, c);
        let inv = aug[c][c].inv()?;
        for x in aug[c].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..m {
            if r != c && !aug[r][c].is_zero() {
                let k = aug[r][c];
                for j in 0..2 * m {
                    let v = aug[r][j].sub(&k.mul(&aug[c][j]));
                    aug[r][j] = v;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[m..].to_vec()).collect())
}

/// Images of the Wirtinger generators in `GL(m, F_q)`, with their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dim: usize,
    field: PrimeField,
    images: Vec<FMat>,
    inverses: Vec<FMat>,
}

/// JSON form: `{"dim": 2, "field": 7, "images": {"x1": [[0,2],[4,0]], ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub dim: usize,
    pub field: u64,
    pub images: BTreeMap<String, Vec<Vec<i64>>>,
}

impl Representation {
    pub fn new(field: PrimeField, images: Vec<FMat>) -> Result<Self> {
        let dim = images.first().map_or(1, Vec::len);
        let mut inverses = Vec::with_capacity(images.len());
        for (g, im) in images.iter().enumerate() {
            if im.len() != dim || im.iter().any(|r| r.len() != dim) {
                return Err(Error::Dimension(format!(
                    "image of x{} is not {dim}x{dim}",
                    g + 1
                )));
            }
            if im.iter().flatten().any(|x| x.field() != field) {
                return Err(Error::Precondition(format!(
                    "image of x{} has entries outside F_{}",
                    g + 1,
                    field.modulus()
                )));
            }
            let inv = f_inverse(im, field).ok_or_else(|| {
                Error::Precondition(format!("image of x{} is not invertible", g + 1))
            })?;
            inverses.push(inv);
        }
        Ok(Representation {
            dim,
            field,
            images,
            inverses,
        })
    }

    /// Every generator sent to the `1 x 1` identity.
    pub fn trivial(n_generators: usize, field: PrimeField) -> Self {
        let images = vec![f_identity(1, field); n_generators];
        Representation {
            dim: 1,
            field,
            inverses: images.clone(),
            images,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n_generators(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, g: usize) -> &FMat {
        &self.images[g]
    }

    pub fn image_of_letter(&self, g: usize, e: i8) -> &FMat {
        if e > 0 {
            &self.images[g]
        } else {
            &self.inverses[g]
        }
    }

    pub fn eval_word(&self, w: &GroupWord) -> FMat {
        w.eval(
            f_identity(self.dim, self.field),
            |g, e| self.image_of_letter(g, e).clone(),
            f_mul,
        )
    }

    pub fn to_json(&self) -> RepresentationJson {
        RepresentationJson {
            dim: self.dim,
            field: self.field.modulus(),
            images: self
                .images
                .iter()
                .enumerate()
                .map(|(g, im)| {
                    (
                        format!("x{}", g + 1),
                        im.iter()
                            .map(|r| r.iter().map(|x| x.value() as i64).collect())
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_json(j: &RepresentationJson, n_generators: usize) -> Result<Self> {
        let field = PrimeField::new(j.field)?;
        let mut images = Vec::with_capacity(n_generators);
        for g in 1..=n_generators {
            let im = j.images.get(&format!("x{g}")).ok_or_else(|| {
                Error::Precondition(format!("representation has no image for x{g}"))
            })?;
            images.push(
                im.iter()
                    .map(|r| r.iter().map(|&v| field.elem(v)).collect())
                    .collect(),
            );
        }
        if j.images.len() != n_generators {
            return Err(Error::Precondition(format!(
                "representation lists {} images for {n_generators} generators",
                j.images.len()
            )));
        }
        let rep = Representation::new(field, images)?;
        if rep.dim != j.dim {
            return Err(Error::Dimension(format!(
                "declared dim {} but images are {}x{}",
                j.dim, rep.dim, rep.dim
            )));
        }
        Ok(rep)
    }
}

/// Checks every relator maps to the identity; the error names the first
/// failing relator (1-based).
pub fn verify_representation(p: &Presentation, rho: &Representation) -> Result<()> {
    if rho.n_generators() != p.n_generators() {
        return Err(Error::Dimension(format!(
            "{} images for {} generators",
            rho.n_generators(),
            p.n_generators()
        )));
    }
    let id = f_identity(rho.dim, rho.field);
    for (i, r) in p.relators.iter().enumerate() {
        if rho.eval_word(r) != id {
            return Err(Error::NotARepresentation(i + 1));
        }
    }
    Ok(())
}

/// Solutions of `2 c(over) = c(under_in) + c(under_out)` modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSpace {
    pub p: u64,
    pub basis: Vec<Vec<u64>>,
}

impl ColoringSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// A nonconstant coloring with `c(1) = 0` and first nonzero value 1.
    pub fn nonconstant(&self) -> Option<Vec<u64>> {
        let f = PrimeField::new(self.p).ok()?;
        self.basis
            .iter()
            .find(|v| v.iter().any(|&x| x != v[0]))
            .map(|v| {
                let shifted: Vec<Fp> = v.iter().map(|&x| f.elem(x as i64 - v[0] as i64)).collect();
                let lead = shifted
                    .iter()
                    .find(|x| !x.is_zero())
                    .expect("nonconstant")
                    .inv()
                    .expect("nonzero");
                shifted.iter().map(|x| x.mul(&lead).value()).collect()
            })
    }
}

pub fn fox_colorings(d: &KnotDiagram, p: u64) -> Result<ColoringSpace> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::Precondition("colorings need an odd prime".into()));
    }
    let f = PrimeField::new(p)?;
    let n = d.n_arcs();
    let rows: Vec<Vec<Fp>> = d
        .crossings()
        .iter()
        .map(|c| {
            let mut row = vec![f.elem(0); n];
            row[c.over.index()] = row[c.over.index()].add(&f.elem(2));
            row[c.under_in.index()] = row[c.under_in.index()].sub(&f.elem(1));
            row[c.under_out.index()] = row[c.under_out.index()].sub(&f.elem(1));
            row
        })
        .collect();
    let basis = nullspace(rows, n, f)
        .into_iter()
        .map(|v| v.iter().map(Fp::value).collect())
        .collect();
    Ok(ColoringSpace { p, basis })
}

/// Least prime `q` with `q = 1 (mod p)`.
pub fn least_prime_one_mod(p: u64) -> u64 {
    (1..)
        .map(|k| k * p + 1)
        .find(|&q| is_prime(q))
        .expect("Dirichlet")
}

/// Dihedral representation `x_i -> [[0, w^c_i], [w^-c_i, 0]]` over the least
/// `F_q` with `q = 1 (mod p)`, `w` the `(q-1)/p`-th power of the least
/// primitive root.
pub fn dihedral_rep(d: &KnotDiagram, p: u64, coloring: &[u64]) -> Result<Representation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if coloring.len() != d.n_arcs() {
        return Err(Error::Dimension(format!(
            "coloring has {} values for {} arcs",
            coloring.len(),
            d.n_arcs()
        )));
    }
    let fp = PrimeField::new(p)?;
    let c: Vec<u64> = coloring
        .iter()
        .map(|&x| fp.elem(x as i64).value())
        .collect();
    if c.iter().all(|&x| x == c[0]) {
        return Err(Error::Precondition(
            "dihedral representation needs a nonconstant coloring".into(),
        ));
    }
    let q = least_prime_one_mod(p);
    let f = PrimeField::new(q)?;
    let omega = f.primitive_root().pow((q - 1) / p);
    let images = c
        .iter()
        .map(|&ci| {
            let a = omega.pow(ci);
            let b = omega.pow((p - ci) % p);
            vec![vec![f.elem(0), a], vec![b, f.elem(0)]]
        })
        .collect();
    let rho = Representation::new(f, images)?;
    verify_representation(&crate::knot_model::wirtinger(d), &rho)?;
    Ok(rho)
}

/// `det` of a scalar matrix over `F_q`.
pub fn f_det(a: &FMat, f: PrimeField) -> Fp {
    field_det(a.clone(), f).expect("square")
}

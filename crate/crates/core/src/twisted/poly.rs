use super::rep::{FMat, Representation};
use crate::alexander::{fox_derivative, GroupWord};
use crate::arc_graph::{ArcGraph, Edge};
use crate::error::{Error, Result};
use crate::knot_model::{wirtinger, ArcId, KnotDiagram, Presentation, Sign};
use crate::laurent::{
    canonicalize, divide_exact, CanonicalPoly, Coeff, Fp, FpMatrix, FpPoly, LaurentPoly, Quotient,
    RingMatrix,
};
use crate::par;
use crate::zeta::{prime_cycles, ClosedWalk};

/// `t^e` times a scalar matrix, as an `m x m` polynomial matrix.
fn scaled(rho: &Representation, a: &FMat, e: i64) -> FpMatrix {
    let f = rho.field();
    let m = rho.dim();
    let mut out = RingMatrix::zeros(m, m, f);
    for r in 0..m {
        for c in 0..m {
            if !a[r][c].is_zero() {
                out.set(r, c, LaurentPoly::monomial(a[r][c], e));
            }
        }
    }
    out
}

/// `t^{ab(w)} rho(w)`.
pub fn phi(rho: &Representation, w: &GroupWord) -> FpMatrix {
    scaled(rho, &rho.eval_word(w), w.total_exponent())
}

fn place(dst: &mut FpMatrix, r0: usize, c0: usize, block: &FpMatrix) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            dst.add_to(r0 + r, c0 + c, block.get(r, c));
        }
    }
}

fn block_of(m: &FpMatrix, i: usize, j: usize, d: usize) -> FpMatrix {
    m.select(
        &(i * d..(i + 1) * d).collect::<Vec<_>>(),
        &(j * d..(j + 1) * d).collect::<Vec<_>>(),
    )
}

/// Fox matrix pushed through `phi`: block row per relator, block column per
/// generator.
pub fn twisted_fox_matrix(p: &Presentation, rho: &Representation) -> Result<FpMatrix> {
    if rho.n_generators() != p.n_generators() {
        return Err(Error::Dimension(format!(
            "{} images for {} generators",
            rho.n_generators(),
            p.n_generators()
        )));
    }
    let d = rho.dim();
    let f = rho.field();
    let mut out = RingMatrix::zeros(p.relators.len() * d, p.n_generators() * d, f);
    for (i, r) in p.relators.iter().enumerate() {
        for j in 0..p.n_generators() {
            let fd = fox_derivative(r, j);
            for (w, c) in fd.terms() {
                let block = phi(rho, w).map(|x| x.scale(&f.elem(c)));
                place(&mut out, i * d, j * d, &block);
            }
        }
    }
    Ok(out)
}

/// Twisted Fox matrix with the relator of the arc `n` removed.
pub fn twisted_alexander_matrix(d: &KnotDiagram, rho: &Representation) -> Result<FpMatrix> {
    let p = wirtinger(d);
    match p.relator_arcs.iter().position(|a| a.0 == d.n_arcs()) {
        Some(i) => twisted_fox_matrix(&p.without_relator(i), rho),
        None => twisted_fox_matrix(&p, rho),
    }
}

/// Twisted polynomial `det A_k / det(t rho(x_k) - I)` with its ingredients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedAlexander {
    pub column: ArcId,
    pub numerator: FpPoly,
    pub denominator: FpPoly,
    pub quotient: Quotient<Fp>,
}

impl TwistedAlexander {
    /// Monic representatives of the reduced numerator and denominator.
    pub fn canonical(&self) -> (CanonicalPoly<Fp>, CanonicalPoly<Fp>) {
        let f = self.denominator.ctx().expect("denominator is nonzero");
        let (n, d) = self.quotient.parts(f);
        (canonicalize(&n, f), canonicalize(&d, f))
    }
}

fn denominator(rho: &Representation, k: usize) -> Result<FpPoly> {
    let m = rho.dim();
    let f = rho.field();
    scaled(rho, rho.image(k), 1)
        .try_sub(&RingMatrix::identity(m, f))?
        .det()
}

/// Twisted Alexander polynomial using block column `k` (first one with a
/// nonzero denominator when `None`).
pub fn twisted_alexander_polynomial(
    d: &KnotDiagram,
    rho: &Representation,
    k: Option<ArcId>,
) -> Result<TwistedAlexander> {
    if !d.is_knot() {
        return Err(Error::Precondition(
            "twisted polynomial needs a single-component diagram".into(),
        ));
    }
    let n = d.n_arcs();
    let k = match k {
        Some(a) if a.0 == 0 || a.0 > n => return Err(Error::UnknownArc(a.0)),
        Some(a) => a,
        None => (1..=n)
            .map(ArcId)
            .find(|a| denominator(rho, a.index()).is_ok_and(|p| !p.is_zero()))
            .ok_or_else(|| {
                Error::Precondition("det(t rho(x_k) - I) vanishes for every k".into())
            })?,
    };
    let den = denominator(rho, k.index())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let a = twisted_alexander_matrix(d, rho)?;
    let m = rho.dim();
    let cols: Vec<usize> = (k.index() * m..(k.index() + 1) * m).collect();
    let num = a.minor(&[], &cols).det()?;
    let quotient = divide_exact(&num, &den)?;
    Ok(TwistedAlexander {
        column: k,
        numerator: num,
        denominator: den,
        quotient,
    })
}

/// Pairs `(j, k)` whose polynomials differ by more than a unit.
pub fn column_independence_check(
    d: &KnotDiagram,
    rho: &Representation,
) -> Result<Vec<(ArcId, ArcId)>> {
    let polys: Vec<Option<TwistedAlexander>> = (1..=d.n_arcs())
        .map(
            |a| match twisted_alexander_polynomial(d, rho, Some(ArcId(a))) {
                Ok(p) => Ok(Some(p)),
                Err(Error::DivisionByZero) => Ok(None),
                Err(e) => Err(e),
            },
        )
        .collect::<Result<_>>()?;
    let f = rho.field();
    let mut bad = Vec::new();
    for (j, pj) in polys.iter().enumerate() {
        for (k, pk) in polys.iter().enumerate().skip(j + 1) {
            if let (Some(pj), Some(pk)) = (pj, pk) {
                let lhs = canonicalize(&(&pk.numerator * &pj.denominator), f);
                let rhs = canonicalize(&(&pj.numerator * &pk.denominator), f);
                if lhs.poly != rhs.poly {
                    bad.push((ArcId(j + 1), ArcId(k + 1)));
                }
            }
        }
    }
    Ok(bad)
}

fn word(letters: &[(usize, i8)]) -> GroupWord {
    GroupWord::from_letters(letters.to_vec())
}

/// Block weight of an arc-graph edge under `rho`.
pub fn edge_block(d: &KnotDiagram, rho: &Representation, e: &Edge) -> FpMatrix {
    let c = d.crossings()[e.crossing];
    let (i, j, k) = (c.under_in.index(), c.over.index(), c.under_out.index());
    let go = e.label.is_go_under();
    match c.sign {
        Sign::Positive => {
            let t = word(&[(i, 1), (j, 1), (k, -1)]);
            if go {
                phi(rho, &t)
            } else {
                phi(rho, &t.mul(&word(&[(j, -1)])))
                    .try_sub(&phi(rho, &word(&[(i, 1)])))
                    .expect("same shape")
            }
        }
        Sign::Negative => {
            let t = word(&[(i, 1), (j, -1), (k, -1)]);
            if go {
                phi(rho, &t)
            } else {
                phi(rho, &word(&[(i, 1), (j, -1)]))
                    .try_sub(&phi(rho, &t))
                    .expect("same shape")
            }
        }
    }
}

/// Arc diagram of `d` with block weights, as an `nm x nm` matrix.
pub fn twisted_weight_matrix(d: &KnotDiagram, rho: &Representation) -> Result<FpMatrix> {
    let g = ArcGraph::from_diagram(d)?;
    g.block_weight_matrix(rho.dim(), rho.field(), |e| edge_block(d, rho, e))
}

/// Block positions `(row arc, col arc)` where the twisted Fox matrix (rows
/// aligned by arc) differs from `I - B`.
pub fn twisted_weight_check(d: &KnotDiagram, rho: &Representation) -> Result<Vec<(ArcId, ArcId)>> {
    let p = wirtinger(d);
    if p.relators.len() != d.n_arcs() {
        return Err(Error::Precondition(
            "diagram has arcs that never pass under".into(),
        ));
    }
    let fox = twisted_fox_matrix(&p, rho)?;
    let m = rho.dim();
    let n = d.n_arcs();
    let i_minus_b =
        RingMatrix::identity(n * m, rho.field()).try_sub(&twisted_weight_matrix(d, rho)?)?;
    let mut bad = Vec::new();
    for (row, arc) in p.relator_arcs.iter().enumerate() {
        for col in 0..n {
            if block_of(&fox, row, col, m) != block_of(&i_minus_b, arc.index(), col, m) {
                bad.push((*arc, ArcId(col + 1)));
            }
        }
    }
    Ok(bad)
}

/// Sum of the blocks leaving each arc, evaluated at `t = 1`.
pub fn block_row_sums_at_one(d: &KnotDiagram, rho: &Representation) -> Result<Vec<FMat>> {
    let b = twisted_weight_matrix(d, rho)?;
    let m = rho.dim();
    let f = rho.field();
    let one = f.elem(1);
    (0..d.n_arcs())
        .map(|a| {
            let mut s = vec![vec![f.elem(0); m]; m];
            for col in 0..d.n_arcs() {
                for r in 0..m {
                    for c in 0..m {
                        s[r][c] = s[r][c].add(&b.get(a * m + r, col * m + c).eval(&one)?);
                    }
                }
            }
            Ok(s)
        })
        .collect()
}

/// `tr(B^m)` from matrix powers, from walks, and from primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedTraceRow {
    pub m: usize,
    pub trace: FpPoly,
    pub walks: FpPoly,
    pub from_primes: FpPoly,
}

impl TwistedTraceRow {
    pub fn holds(&self) -> bool {
        self.trace == self.walks && self.walks == self.from_primes
    }
}

fn poly_trace(m: &FpMatrix) -> FpPoly {
    m.trace()
}

fn walk_block(d: &KnotDiagram, rho: &Representation, g: &ArcGraph, cycle: &[usize]) -> FpMatrix {
    let dim = rho.dim();
    let mut acc = RingMatrix::identity(dim, rho.field());
    for (idx, &u) in cycle.iter().enumerate() {
        let v = cycle[(idx + 1) % cycle.len()];
        let mut step = RingMatrix::zeros(dim, dim, rho.field());
        for e in g.out_edges(u).iter().filter(|e| e.to == v) {
            step = step.try_add(&edge_block(d, rho, e)).expect("same shape");
        }
        acc = acc.try_mul(&step).expect("same shape");
    }
    acc
}

/// Checks `tr(B^m)` for `m = 1..=horizon` against closed-walk block products
/// and against `sum over primes p with len(p) | m of len(p) tr(M_p^{m/len(p)})`.
pub fn twisted_trace_check(
    d: &KnotDiagram,
    rho: &Representation,
    horizon: usize,
) -> Result<Vec<TwistedTraceRow>> {
    let g = ArcGraph::from_diagram(d)?;
    let b = twisted_weight_matrix(d, rho)?;
    let f = rho.field();
    let primes: Vec<ClosedWalk> = prime_cycles(&g, horizon);
    let prime_blocks: Vec<FpMatrix> = par::map(&primes, |p| walk_block(d, rho, &g, p.vertices()));
    let mut power = RingMatrix::identity(b.rows(), f);
    let mut rows = Vec::with_capacity(horizon);
    for m in 1..=horizon {
        power = power.try_mul(&b)?;
        let walks = closed_walk_block_sum(d, rho, &g, m);
        let mut from_primes = FpPoly::zero();
        for (p, mp) in primes.iter().zip(&prime_blocks) {
            if m % p.len() == 0 {
                let mut pw = RingMatrix::identity(rho.dim(), f);
                for _ in 0..m / p.len() {
                    pw = pw.try_mul(mp)?;
                }
                from_primes = &from_primes + &poly_trace(&pw).scale(&f.elem(p.len() as i64));
            }
        }
        rows.push(TwistedTraceRow {
            m,
            trace: poly_trace(&power),
            walks,
            from_primes,
        });
    }
    Ok(rows)
}

fn closed_walk_block_sum(d: &KnotDiagram, rho: &Representation, g: &ArcGraph, m: usize) -> FpPoly {
    #[allow(clippy::too_many_arguments)]
    fn go(
        d: &KnotDiagram,
        rho: &Representation,
        g: &ArcGraph,
        start: usize,
        at: usize,
        left: usize,
        acc: &FpMatrix,
        out: &mut FpPoly,
    ) {
        if left == 0 {
            if at == start {
                *out = &*out + &acc.trace();
            }
            return;
        }
        for e in g.out_edges(at) {
            let next = acc.try_mul(&edge_block(d, rho, e)).expect("same shape");
            go(d, rho, g, start, e.to, left - 1, &next, out);
        }
    }
    let parts = par::map_range(g.n_vertices(), |s| {
        let mut out = FpPoly::zero();
        go(
            d,
            rho,
            g,
            s,
            s,
            m,
            &RingMatrix::identity(rho.dim(), rho.field()),
            &mut out,
        );
        out
    });
    parts.iter().fold(FpPoly::zero(), |a, b| &a + b)
}

/// `rho(x_i)` as a plain matrix, for row-sum comparisons.
pub fn image_matrix(rho: &Representation, g: usize) -> FMat {
    rho.image(g).clone()
}

/// `I + a - b`.
#[cfg(test)]
pub(crate) fn identity_plus_minus(a: &FMat, b: &FMat) -> FMat {
    let m = a.len();
    let id = super::rep::f_identity(m, a[0][0].field());
    (0..m)
        .map(|r| {
            (0..m)
                .map(|s| id[r][s].add(&a[r][s]).sub(&b[r][s]))
                .collect()
        })
        .collect()
}

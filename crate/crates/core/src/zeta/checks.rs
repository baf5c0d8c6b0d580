use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::primes::{closed_walk_sum, prime_cycles_digraph, ClosedWalk};
use crate::alexander::cut_graph_det;
use crate::arc_graph::{alexander_spec, alexander_spec_at, ArcGraph, WeightedDigraph};
use crate::error::{Error, Result};
use crate::knot_model::{cable, Tangle};
use crate::laurent::linalg::{field_det, field_solve};
use crate::laurent::{QPoly, RingMatrix};
use crate::par;

pub const DEFAULT_TRACE_HORIZON: usize = 8;
pub const EULER_TOLERANCE: f64 = 1e-6;

type Q = BigRational;

fn q_int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Per-length comparison of `tr(W^m)` with closed-walk sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub m: usize,
    pub trace: QPoly,
    /// Closed walks found by direct search.
    pub walks: QPoly,
    /// Closed walks rebuilt from primes: all rotations of all prime powers.
    pub from_primes: QPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCheck {
    pub rows: Vec<TraceRow>,
    /// `sum_{p, k: k len(p) <= L} N(p)^k / k`
    pub log_primes: QPoly,
    /// `sum_{m <= L} tr(W^m) / m`
    pub log_traces: QPoly,
    pub n_primes: usize,
}

impl TraceCheck {
    pub fn holds(&self) -> bool {
        self.log_primes == self.log_traces
            && self
                .rows
                .iter()
                .all(|r| r.trace == r.walks && r.trace == r.from_primes)
    }
}

/// Checks `tr(W^m)` against closed walks for `m <= horizon`, and the
/// logarithmic prime expansion truncated at `horizon`, exactly.
pub fn trace_identity_check(g: &WeightedDigraph<Q>, horizon: usize) -> Result<TraceCheck> {
    let w = g.weight_matrix();
    let primes = prime_cycles_digraph(g, horizon);
    let prime_weights: Vec<(usize, QPoly)> = primes
        .iter()
        .map(|p| (p.len(), p.weight(g).expect("prime uses graph edges")))
        .collect();

    let mut powers = Vec::with_capacity(horizon);
    let mut cur = w.clone();
    for m in 1..=horizon {
        if m > 1 {
            cur = cur.try_mul(&w)?;
        }
        powers.push((m, cur.trace()));
    }
    let rows = par::map(&powers, |(m, trace)| {
        let from_primes = prime_weights
            .iter()
            .filter(|(len, _)| m % len == 0)
            .fold(QPoly::zero(), |acc, (len, wt)| {
                &acc + &wt.pow((m / len) as u32, ()).scale(&q_int(*len as i64))
            });
        TraceRow {
            m: *m,
            trace: trace.clone(),
            walks: closed_walk_sum(g, *m),
            from_primes,
        }
    });

    let mut log_primes = QPoly::zero();
    for (len, wt) in &prime_weights {
        let mut k = 1;
        let mut pw = wt.clone();
        while k * len <= horizon {
            log_primes = &log_primes + &pw.scale(&Q::new(BigInt::one(), BigInt::from(k)));
            pw = &pw * wt;
            k += 1;
        }
    }
    let log_traces = powers.iter().fold(QPoly::zero(), |acc, (m, tr)| {
        &acc + &tr.scale(&Q::new(BigInt::one(), BigInt::from(*m)))
    });
    Ok(TraceCheck {
        rows,
        log_primes,
        log_traces,
        n_primes: primes.len(),
    })
}

fn eval_weights(g: &WeightedDigraph<Q>, t0: &Q) -> Result<WeightedDigraph<Q>> {
    g.eval(t0)
}

fn constant(p: &QPoly) -> Q {
    p.coeff(0).cloned().unwrap_or_else(Q::zero)
}

/// `||(|W|)^k||_1^(1/k)` for `k = 16`, an estimate of the spectral radius of
/// the entrywise absolute weight matrix.
pub fn spectral_radius_estimate(g: &WeightedDigraph<Q>) -> f64 {
    let n = g.n_vertices();
    if n == 0 {
        return 0.0;
    }
    let mut a = vec![vec![0.0f64; n]; n];
    for (u, v, p) in g.edges() {
        a[*u][*v] = constant(p).abs().to_f64().unwrap_or(f64::INFINITY);
    }
    let mul = |x: &Vec<Vec<f64>>, y: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut p = a.clone();
    for _ in 0..4 {
        p = mul(&p, &p);
    }
    let norm = (0..n)
        .map(|j| (0..n).map(|i| p[i][j]).sum::<f64>())
        .fold(0.0, f64::max);
    norm.powf(1.0 / 16.0)
}

/// Partial Euler product over primes up to a length.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerProduct {
    pub t0: Q,
    pub max_len: usize,
    pub n_primes: usize,
    /// Exact value, when it was computed exactly.
    pub exact: Option<Q>,
    pub approx: f64,
    pub radius_estimate: f64,
    pub warning: Option<String>,
}

/// Evaluated graph, its primes, spectral radius estimate, divergence warning.
type Evaluated = (WeightedDigraph<Q>, Vec<ClosedWalk>, f64, Option<String>);

fn euler_common(g: &WeightedDigraph<Q>, t0: &Q, max_len: usize) -> Result<Evaluated> {
    let ev = eval_weights(g, t0)?;
    let radius = spectral_radius_estimate(&ev);
    let warning = (radius >= 1.0).then(|| {
        format!("spectral radius estimate {radius:.4} >= 1: the Euler product need not converge")
    });
    let primes = prime_cycles_digraph(&ev, max_len);
    Ok((ev, primes, radius, warning))
}

/// `prod (1 - N(P)(t0))^-1` over primes of length `<= max_len`, exactly.
pub fn zeta_partial_product(
    g: &WeightedDigraph<Q>,
    t0: &Q,
    max_len: usize,
) -> Result<EulerProduct> {
    let (ev, primes, radius, warning) = euler_common(g, t0, max_len)?;
    let mut value = Q::one();
    for p in &primes {
        let factor = Q::one() - constant(&p.weight(&ev).expect("prime uses graph edges"));
        if factor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        value /= factor;
    }
    Ok(EulerProduct {
        t0: t0.clone(),
        max_len,
        n_primes: primes.len(),
        approx: value.to_f64().unwrap_or(f64::NAN),
        exact: Some(value),
        radius_estimate: radius,
        warning,
    })
}

/// The same product in floating point, for horizons where exact rationals
/// grow too large.
pub fn zeta_partial_product_approx(
    g: &WeightedDigraph<Q>,
    t0: &Q,
    max_len: usize,
) -> Result<EulerProduct> {
    let (ev, primes, radius, warning) = euler_common(g, t0, max_len)?;
    let weights: Vec<(usize, f64)> = ev
        .edges()
        .iter()
        .map(|(u, v, p)| {
            (
                u * ev.n_vertices() + v,
                constant(p).to_f64().unwrap_or(f64::NAN),
            )
        })
        .collect();
    let lookup = |u: usize, v: usize| {
        let key = u * ev.n_vertices() + v;
        weights[weights.binary_search_by_key(&key, |e| e.0).expect("edge")].1
    };
    let factors = par::map(&primes, |p| {
        let vs = p.vertices();
        let k = vs.len();
        let w: f64 = (0..k).map(|i| lookup(vs[i], vs[(i + 1) % k])).product();
        1.0 / (1.0 - w)
    });
    Ok(EulerProduct {
        t0: t0.clone(),
        max_len,
        n_primes: primes.len(),
        exact: None,
        approx: factors.iter().product(),
        radius_estimate: radius,
        warning,
    })
}

/// Scalar `det(I - W)` of a weighted digraph at `t0`.
pub fn det_i_minus_w_at(g: &WeightedDigraph<Q>, t0: &Q) -> Result<Q> {
    let ev = eval_weights(g, t0)?;
    let n = ev.n_vertices();
    let mut a = vec![vec![Q::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    for (u, v, p) in ev.edges() {
        a[*u][*v] -= constant(p);
    }
    field_det(a, ())
}

/// Trace identity (exact) together with the Euler product at `t0` against
/// `1 / det(I - W)(t0)` (numeric).
#[derive(Clone, Debug, PartialEq)]
pub struct DeterminantFormulaCheck {
    pub trace: TraceCheck,
    pub euler: EulerProduct,
    pub det_at_t0: Q,
    /// `1 / det(I - W)(t0)` as a float.
    pub target: f64,
    pub error: f64,
}

impl DeterminantFormulaCheck {
    pub fn holds(&self) -> bool {
        self.trace.holds() && self.error <= EULER_TOLERANCE
    }
}

/// Exact products are used up to `EXACT_EULER_LIMIT` primes, floats beyond.
pub const EXACT_EULER_LIMIT: usize = 2_000;

pub fn determinant_formula_check(
    g: &WeightedDigraph<Q>,
    t0: &Q,
    trace_horizon: usize,
    euler_horizon: usize,
) -> Result<DeterminantFormulaCheck> {
    let trace = trace_identity_check(g, trace_horizon)?;
    let det = det_i_minus_w_at(g, t0)?;
    if det.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n_primes = prime_cycles_digraph(g, euler_horizon).len();
    let euler = if n_primes <= EXACT_EULER_LIMIT {
        zeta_partial_product(g, t0, euler_horizon)?
    } else {
        zeta_partial_product_approx(g, t0, euler_horizon)?
    };
    let target = (Q::one() / &det).to_f64().unwrap_or(f64::NAN);
    let error = match &euler.exact {
        Some(v) => ((v - Q::one() / &det).abs())
            .to_f64()
            .unwrap_or(f64::INFINITY),
        None => (euler.approx - target).abs(),
    };
    let error = if error.is_nan() { f64::INFINITY } else { error };
    Ok(DeterminantFormulaCheck {
        trace,
        euler,
        det_at_t0: det,
        target,
        error,
    })
}

/// `count` nonzero rationals `a/b` with `|a|, b <= 40`, from a fixed seed.
pub fn random_samples(seed: u64, count: usize) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a: i64 = rng.gen_range(-40..=40);
        let b: i64 = rng.gen_range(1..=40);
        if a == 0 {
            continue;
        }
        let v = Q::new(BigInt::from(a), BigInt::from(b));
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Total weight of walks from the initial to the terminal half, per sample;
/// `None` where `I - W` is singular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSum {
    pub values: Vec<(Q, Option<Q>)>,
}

impl PathSum {
    pub fn holds(&self) -> bool {
        self.values.iter().any(|(_, v)| v.is_some())
            && self
                .values
                .iter()
                .all(|(_, v)| v.as_ref().is_none_or(|v| v.is_one()))
    }

    pub fn skipped(&self) -> usize {
        self.values.iter().filter(|(_, v)| v.is_none()).count()
    }
}

/// Solves `(I - W) x = e_terminal` at each sample and reads off `x_initial`.
pub fn path_sum_check(t: &Tangle, samples: &[Q]) -> Result<PathSum> {
    if !t.is_one_string() {
        return Err(Error::Precondition(
            "path sums need a 1-string tangle".into(),
        ));
    }
    if t.crossings().is_empty() {
        return Err(Error::Precondition(
            "the tangle has no crossings, so no walks".into(),
        ));
    }
    let (init, term) = t.cut_arcs()[0];
    let g = ArcGraph::build(t)?.weighted(&alexander_spec());
    let n = g.n_vertices();
    let values = par::map(samples, |t0| {
        let ev = g.eval(t0)?;
        let mut a = vec![vec![Q::zero(); n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = Q::one();
        }
        for (u, v, p) in ev.edges() {
            a[*u][*v] -= constant(p);
        }
        let mut b = vec![Q::zero(); n];
        b[term.index()] = Q::one();
        Ok((
            t0.clone(),
            field_solve(a, b, ())?.map(|x| x[init.index()].clone()),
        ))
    });
    Ok(PathSum {
        values: values.into_iter().collect::<Result<_>>()?,
    })
}

/// Both sides of an exact polynomial identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactIdentity<T> {
    pub lhs: T,
    pub rhs: T,
}

impl<T: PartialEq> ExactIdentity<T> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `det(I - W)` of the composite against the product for the factors.
pub fn composition_check(t1: &Tangle, t2: &Tangle) -> Result<ExactIdentity<QPoly>> {
    let spec = alexander_spec();
    let composite = t1.compose(t2)?;
    Ok(ExactIdentity {
        lhs: cut_graph_det(&composite, &spec)?,
        rhs: &cut_graph_det(t1, &spec)? * &cut_graph_det(t2, &spec)?,
    })
}

/// Per sample `u`: `det(I - W)` of the `n`-cable at `u` against that of the
/// tangle at `u^n`.
pub fn cabling_check(t: &Tangle, n: usize, samples: &[Q]) -> Result<Vec<(Q, ExactIdentity<Q>)>> {
    if samples.iter().any(|u| !u.is_positive()) {
        return Err(Error::Precondition(
            "cabling samples must be positive".into(),
        ));
    }
    let c = cable(t, n)?;
    let g_cable = ArcGraph::build(&c)?;
    let g = ArcGraph::build(t)?;
    let det_at = |g: &ArcGraph, u: &Q| -> Result<Q> {
        let spec = alexander_spec_at(u, ())?;
        let w = g.weight_matrix(&spec);
        let m = RingMatrix::identity(g.n_vertices(), ()).try_sub(&w)?;
        let rows = (0..m.rows())
            .map(|i| m.row(i).iter().map(constant).collect())
            .collect();
        field_det(rows, ())
    };
    par::map(samples, |u| {
        let un = (0..n).fold(Q::one(), |acc, _| acc * u);
        Ok((
            u.clone(),
            ExactIdentity {
                lhs: det_at(&g_cable, u)?,
                rhs: det_at(&g, &un)?,
            },
        ))
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_model::{parse_pd, ArcId, KnotDiagram};
    use crate::laurent::parse_rational;

    fn q(s: &str) -> Q {
        parse_rational(s).unwrap()
    }

    fn trefoil() -> KnotDiagram {
        parse_pd("X+ 3 1 2 / X+ 1 2 3 / X+ 2 3 1").unwrap()
    }

    fn fig8() -> KnotDiagram {
        parse_pd("X- 4 1 2 / X+ 1 2 3 / X- 2 3 4 / X+ 3 4 1").unwrap()
    }

    fn cut_graph(d: &KnotDiagram, a: usize) -> WeightedDigraph<Q> {
        ArcGraph::build(&Tangle::cut(d, &[ArcId(a)]).unwrap())
            .unwrap()
            .weighted(&alexander_spec())
    }

    #[test]
    fn trefoil_trace_square() {
        let g = cut_graph(&trefoil(), 1);
        let check = trace_identity_check(&g, 6).unwrap();
        assert!(check.holds());
        let t = QPoly::t();
        let expect = (&t * &(&QPoly::q_one() - &t)).scale(&q("2"));
        assert_eq!(check.rows[1].trace, expect);
        assert!(check.rows[0].trace.is_zero());
    }

    #[test]
    fn trace_identity_uncut() {
        let g = ArcGraph::from_diagram(&trefoil())
            .unwrap()
            .weighted(&alexander_spec());
        assert!(trace_identity_check(&g, 6).unwrap().holds());
        let g = ArcGraph::from_diagram(&fig8())
            .unwrap()
            .weighted(&alexander_spec());
        assert!(trace_identity_check(&g, 6).unwrap().holds());
    }

    #[test]
    fn trefoil_euler_product() {
        let g = cut_graph(&trefoil(), 1);
        for len in [2, 5] {
            let e = zeta_partial_product(&g, &q("1/2"), len).unwrap();
            assert_eq!(e.exact, Some(q("4/3")));
        }
        assert_eq!(
            zeta_partial_product(&g, &q("1/2"), 1).unwrap().exact,
            Some(q("1"))
        );
        let check = determinant_formula_check(&g, &q("1/2"), 8, 4).unwrap();
        assert!(check.holds());
    }

    #[test]
    fn empty_graph_euler() {
        let g = ArcGraph::from_diagram(&KnotDiagram::unknot())
            .unwrap()
            .weighted(&alexander_spec());
        assert_eq!(
            zeta_partial_product(&g, &q("1/3"), 10).unwrap().exact,
            Some(q("1"))
        );
        assert!(determinant_formula_check(&g, &q("1/3"), 8, 10)
            .unwrap()
            .holds());
    }

    #[test]
    fn convergent_figure_eight() {
        let g = cut_graph(&fig8(), 4);
        let check = determinant_formula_check(&g, &q("4/5"), 8, 40).unwrap();
        assert!(check.euler.radius_estimate < 1.0);
        assert!(check.holds(), "{check:?}");
    }

    #[test]
    fn divergent_figure_eight_warns() {
        let g = cut_graph(&fig8(), 4);
        let e = zeta_partial_product_approx(&g, &q("1/10"), 12).unwrap();
        assert!(e.warning.is_some());
    }

    #[test]
    fn path_sums_are_one() {
        let samples = random_samples(0, 20);
        assert_eq!(samples.len(), 20);
        for d in [trefoil(), fig8()] {
            for a in 1..=d.n_arcs() {
                let t = Tangle::cut(&d, &[ArcId(a)]).unwrap();
                let ps = path_sum_check(&t, &samples).unwrap();
                assert!(ps.holds(), "{ps:?}");
            }
        }
        let t = Tangle::cut(&trefoil(), &[ArcId(1)]).unwrap();
        let ps = path_sum_check(&t, &[q("1/2"), q("1")]).unwrap();
        assert_eq!(ps.values[0].1, Some(q("1")));
        assert_eq!(ps.values[1].1, Some(q("1")));
    }

    #[test]
    fn composition_multiplies() {
        let t3 = Tangle::cut(&trefoil(), &[ArcId(3)]).unwrap();
        let t4 = Tangle::cut(&fig8(), &[ArcId(4)]).unwrap();
        let id = composition_check(&t3, &t3).unwrap();
        assert!(id.holds());
        assert_eq!(
            id.rhs,
            QPoly::from_ints(&[(0, 1), (1, -1), (2, 1)]).pow(2, ())
        );
        assert!(composition_check(&t3, &t4).unwrap().holds());
        let bare = Tangle::cut(&KnotDiagram::unknot(), &[ArcId(1)]).unwrap();
        assert!(composition_check(&t4, &bare).unwrap().holds());
    }

    #[test]
    fn cabling_identity() {
        let samples = [q("1/2"), q("2/3")];
        for d in [trefoil(), fig8()] {
            let t = Tangle::cut(&d, &[ArcId(1)]).unwrap();
            for n in 1..=3 {
                for (u, id) in cabling_check(&t, n, &samples).unwrap() {
                    assert!(id.holds(), "n={n} u={u} {id:?}");
                }
            }
        }
    }
}

//! Acceptance suites. Each criterion returns named checks carrying the computed
//! and the expected value; the CLI `verify` command and the acceptance test
//! target both run these.

use crate::coeff::{c, q, RatQ};
use crate::crystal::{AffineType, Elem, Family};
use crate::dtwo;
use crate::error::Result;
use crate::fock::{Caps, Fock, FockVec};
use crate::lincomb::LinComb;
use crate::twopoint::TwoPoint;
use crate::wedge::span::{verify_all, Membership};
use crate::wedge::{Engine, WedgeVec, Word};
use crate::young::{distinct_partitions, Young};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub criterion: u32,
    pub name: String,
    pub ok: bool,
    pub computed: String,
    pub expected: String,
}

fn check(criterion: u32, name: impl Into<String>, ok: bool, computed: impl ToString, expected: impl ToString) -> Check {
    Check { criterion, name: name.into(), ok, computed: computed.to_string(), expected: expected.to_string() }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub window: i64,
    pub delta_degree: i64,
    pub worder: usize,
    pub qorder: i64,
    /// Restricts type-indexed suites to one type.
    pub only: Option<AffineType>,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 20, window: 2, delta_degree: 3, worder: 4, qorder: 20, only: None }
    }
}

pub const SUITES: [(&str, u32); 13] = [
    ("gamma", 1),
    ("gamma-zero", 2),
    ("recurrence", 3),
    ("omega", 4),
    ("factorization", 5),
    ("algebra", 6),
    ("kern", 7),
    ("confluence", 8),
    ("crystal-limit", 9),
    ("character", 10),
    ("young", 11),
    ("dtwo", 12),
    ("span", 13),
];

/// Criteria behind a suite name; `twopoint` groups 3–5 and `all` everything.
pub fn suite_criteria(name: &str) -> Option<Vec<u32>> {
    match name {
        "all" => Some((1..=13).collect()),
        "twopoint" => Some(vec![3, 4, 5]),
        _ => SUITES.iter().find(|(s, _)| *s == name).map(|(_, k)| vec![*k]),
    }
}

pub fn criterion(k: u32, cfg: &Config) -> Result<Vec<Check>> {
    match k {
        1 => gamma_closed(cfg),
        2 => gamma_zero(cfg),
        3 => recurrences(cfg),
        4 => omega(cfg),
        5 => factorization(cfg),
        6 => algebra(cfg),
        7 => kern(cfg),
        8 => confluence(cfg),
        9 => crystal_limit(cfg),
        10 => character(cfg),
        11 => young(),
        12 => dtwo_suite(),
        13 => span(cfg),
        _ => Err(crate::Error::Invalid(format!("no criterion {k}"))),
    }
}

fn fock(f: Family, n: usize, k: usize, kappa: usize) -> Result<Fock> {
    Fock::new(Engine::new(AffineType::new(f, n, k)?), kappa)
}

fn minimal_types(cfg: &Config) -> Vec<AffineType> {
    match &cfg.only {
        Some(t) => vec![t.clone()],
        None => Family::all().iter().map(|&f| AffineType::minimal(f)).collect(),
    }
}

fn label(t: &AffineType, kappa: usize) -> String {
    format!("{} κ={kappa}", t.name())
}

fn gamma_closed(cfg: &Config) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let a2 = cfg.only.as_ref().is_none_or(|t| t.family == Family::A2Even && t.n == 1);
    if a2 {
        let fk = fock(Family::A2Even, 1, 1, 0)?;
        for m in 1..=2i64 {
            // m(1+ξ^m)/(1−p^{2m}), p = q², ξ = −q⁶
            let xi_m = RatQ::from_terms(&[(6 * m, if m % 2 == 0 { 1 } else { -1 })]);
            let want = &(&c(m) * &(&RatQ::one() + &xi_m)) / &(&RatQ::one() - &q(4 * m));
            let got = fk.gamma(m)?;
            out.push(check(1, format!("A2(2) n=1 γ_{m}"), got == want, &got, &want));
        }
    }
    for k in 2..=3usize {
        if cfg.only.as_ref().is_some_and(|t| !(t.family == Family::A1K && t.k == k)) {
            continue;
        }
        for kappa in 0..=k {
            let fk = fock(Family::A1K, 1, k, kappa)?;
            for n in 1..=2i64 {
                let num = &c(n) * &RatQ::from_terms(&[(0, 1), (4 * n, -1)]);
                let den = RatQ::from_terms(&[(0, 1), (2 * n, -1), (4 * n, -1), (2 * (k as i64 + 1) * n, 1)]);
                let want = &num / &den;
                let got = fk.gamma(n)?;
                out.push(check(1, format!("A1(1) level {k} κ={kappa} γ_{n}"), got == want, &got, &want));
            }
        }
    }
    Ok(out)
}

fn gamma_zero(cfg: &Config) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for t in minimal_types(cfg) {
        for kappa in t.kappas() {
            let fk = Fock::new(Engine::new(t.clone()), kappa)?;
            for n in 1..=2i64 {
                let g = fk.gamma(n)?;
                let at0 = g.at_zero();
                let ok = at0.as_ref().is_some_and(|v| *v == num_rational::BigRational::from_integer(n.into()));
                let shown = at0.map(|v| v.to_string()).unwrap_or_else(|| "pole".into());
                out.push(check(2, format!("{} γ_{n}(0)", label(&t, kappa)), ok, shown, n));
            }
        }
    }
    Ok(out)
}

/// Level-1 families at minimal rank and level 2, 3 `A⁽¹⁾₁`, every κ.
fn twopoint_cases(cfg: &Config, with_a1: bool) -> Result<Vec<TwoPoint>> {
    let types: Vec<AffineType> = match &cfg.only {
        Some(t) => vec![t.clone()],
        None => {
            let mut v: Vec<AffineType> = [Family::A2Even, Family::B1, Family::A2Odd, Family::D1, Family::D2]
                .iter()
                .map(|&f| AffineType::minimal(f))
                .collect();
            v.push(AffineType::new(Family::A1K, 1, 2)?);
            v.push(AffineType::new(Family::A1K, 1, 3)?);
            if with_a1 {
                v.push(AffineType::new(Family::A1, 1, 1)?);
            }
            v
        }
    };
    let mut out = Vec::new();
    for t in types {
        for kappa in t.kappas() {
            out.push(TwoPoint::new(t.clone(), kappa)?);
        }
    }
    Ok(out)
}

fn tp_label(tp: &TwoPoint) -> String {
    label(tp.t(), tp.fk.kappa)
}

fn recurrences(cfg: &Config) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for tp in twopoint_cases(cfg, false)? {
        let bad = tp.recurrence_check(5)?;
        let shown = bad.map(|t| format!("nonzero residual at t={t}")).unwrap_or_else(|| "zero for t=0..5".into());
        out.push(check(3, format!("{} recurrence", tp_label(&tp)), bad.is_none(), shown, "zero for t=0..5"));
    }
    Ok(out)
}

fn omega(cfg: &Config) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut cases = twopoint_cases(cfg, true)?;
    if cfg.only.is_none() {
        cases.push(TwoPoint::d2_even(2)?);
    }
    for tp in cases {
        let closed = tp.omega_closed()?;
        let a = closed.series(6)?.coeffs;
        let b = tp.omega_series(6).coeffs;
        let name = if tp.is_d2_even() { format!("{} even component ω", tp.t().name()) } else { format!("{} ω", tp_label(&tp)) };
        let shown = if a == b { "agrees through w^6".to_string() } else { format!("{b:?}") };
        out.push(check(4, name, a == b, shown, closed));
    }
    Ok(out)
}

fn factorization(cfg: &Config) -> Result<Vec<Check>> {
    let (tw, qo) = (cfg.worder, cfg.qorder);
    let mut out = Vec::new();
    for tp in twopoint_cases(cfg, true)? {
        let gam: Vec<RatQ> = (1..=tw as i64).map(|n| tp.gamma_closed(n)).collect::<Result<_>>()?;
        let theta = TwoPoint::theta_from_gamma(&gam, tw, qo)?;
        let lhs = tp.phi_series(tw, qo)?.mul(&theta).truncate_q(qo);
        let om = tp.omega_closed()?.series(tw)?.to_qseries(qo);
        let ok = lhs.agrees(&om);
        out.push(check(5, format!("{} ω = φ·θ(closed γ)", tp_label(&tp)), ok, if ok { "agrees" } else { "differs" }, format!("(w^{tw}, q^{qo})")));
    }
    // independent route: Fock γ₁, γ₂ where criterion 1 computes them
    let fock_route: Vec<TwoPoint> = twopoint_cases(cfg, false)?
        .into_iter()
        .filter(|tp| matches!(tp.t().family, Family::A2Even | Family::A1K) && tp.t().n == 1)
        .collect();
    for tp in fock_route {
        let gam: Vec<RatQ> = (1..=2).map(|n| tp.fk.gamma(n)).collect::<Result<_>>()?;
        let theta = TwoPoint::theta_from_gamma(&gam, 2, qo)?;
        let ok = theta.agrees(&tp.theta_from_omega(2, qo)?);
        out.push(check(5, format!("{} θ(Fock γ₁,γ₂) = ω/φ", tp_label(&tp)), ok, if ok { "agrees" } else { "differs" }, format!("(w^2, q^{qo})")));
    }
    Ok(out)
}

fn basis_vectors(fk: &Fock, depth: i64) -> Vec<FockVec> {
    fk.sequences(0, depth, Caps::for_depth(depth), false)
        .into_iter()
        .map(|(u, _)| FockVec { m: 0, terms: LinComb::basis(u) })
        .collect()
}

fn sample_vectors(fk: &Fock, depth: i64, count: usize, rng: &mut ChaCha8Rng) -> Vec<FockVec> {
    let words: Vec<Word> = fk.sequences(0, depth, Caps::for_depth(depth), false).into_iter().map(|(u, _)| u).collect();
    (0..count)
        .map(|_| {
            let mut terms: WedgeVec = LinComb::new();
            for _ in 0..rng.gen_range(1..=2) {
                let w = words[rng.gen_range(0..words.len())].clone();
                terms.add_term(w, RatQ::from_int(rng.gen_range(1..=3)));
            }
            FockVec { m: 0, terms }
        })
        .collect()
}

fn serre(fk: &Fock, raise: bool, i: usize, j: usize, v: &FockVec) -> Result<FockVec> {
    let b = (1 - fk.eng.t.cartan(i, j)) as usize;
    let pow = |k: usize, x: &FockVec| if raise { fk.e_divided(i, k, x) } else { fk.f_divided(i, k, x) };
    let one = |x: &FockVec| if raise { Ok(fk.e_act(j, x)) } else { fk.f_act(j, x) };
    let mut acc = FockVec::zero(v.m);
    for k in 0..=b {
        let x = pow(k, &one(&pow(b - k, v)?)?)?;
        let x = if k % 2 == 1 { x.scale(&RatQ::from_int(-1)) } else { x };
        acc = acc.plus(&x)?;
    }
    Ok(acc)
}

fn algebra(cfg: &Config) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    let cases = [(Family::A2Even, 1usize, 1usize, 0usize), (Family::A1K, 1, 2, 0), (Family::A1K, 1, 2, 1)];
    for (f, n, k, kappa) in cases {
        let fk = fock(f, n, k, kappa)?;
        let t = fk.eng.t.clone();
        let name = label(&t, kappa);
        // δ-degree 2
        let depth = 2 * t.h();
        let basis = basis_vectors(&fk, depth);
        let mut bad = 0;
        for v in &basis {
            for i in t.indices() {
                for j in t.indices() {
                    let ef = fk.e_act(i, &fk.f_act(j, v)?);
                    let fe = fk.f_act(j, &fk.e_act(i, v))?;
                    let lhs = ef.sub(&fe)?;
                    let rhs = if i == j {
                        let s = t.qscale(i);
                        let d = &q(s) - &q(-s);
                        fk.t_act(i, 1, v).sub(&fk.t_act(i, -1, v))?.scale(&d.inv()?)
                    } else {
                        FockVec::zero(v.m)
                    };
                    bad += usize::from(lhs != rhs);
                }
            }
        }
        out.push(check(6, format!("{name} [e_i,f_j] on {} basis vectors to depth {depth}", basis.len()), bad == 0, format!("{bad} failures"), "0 failures"));
        for i in t.indices() {
            for j in t.indices().filter(|&j| j != i) {
                let vs = sample_vectors(&fk, 3, 20, &mut rng);
                let mut bad = 0;
                for v in &vs {
                    bad += usize::from(!serre(&fk, true, i, j, v)?.is_zero());
                    bad += usize::from(!serre(&fk, false, i, j, v)?.is_zero());
                }
                out.push(check(6, format!("{name} Serre (i,j)=({i},{j}) on 20 vectors"), bad == 0, format!("{bad} nonzero"), "all zero"));
            }
        }
        let vs = sample_vectors(&fk, 3, 10, &mut rng);
        let mut bad = 0;
        for v in &vs {
            for nb in [-1i64, 1] {
                for i in t.indices() {
                    let a = fk.boson_act(nb, &fk.e_act(i, v))?;
                    let b = fk.e_act(i, &fk.boson_act(nb, v)?);
                    bad += usize::from(a != b);
                    let a = fk.boson_act(nb, &fk.f_act(i, v)?)?;
                    let b = fk.f_act(i, &fk.boson_act(nb, v)?)?;
                    bad += usize::from(a != b);
                }
            }
        }
        out.push(check(6, format!("{name} [B_±1, e_i] = [B_±1, f_i] = 0 on 10 vectors"), bad == 0, format!("{bad} failures"), "0 failures"));
    }
    Ok(out)
}

fn kern(cfg: &Config) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for t in minimal_types(cfg) {
        for kappa in t.kappas() {
            let fk = Fock::new(Engine::new(t.clone()), kappa)?;
            let name = label(&t, kappa);
            let (mut bad_kill, mut bad_keep, mut tested) = (0, 0, 0);
            for m in 0..2i64 {
                let g = fk.ground(m);
                let vac = fk.vacuum(m);
                for &j in t.letters() {
                    for z in g.z - cfg.window..=g.z + cfg.window {
                        let b = Elem::new(j, z);
                        let v = fk.wedge_word(&[b], &vac);
                        tested += 1;
                        if fk.eng.h(b, g) <= 0 {
                            bad_kill += usize::from(!v.is_zero());
                        } else {
                            bad_keep += usize::from(v.is_zero());
                        }
                    }
                }
            }
            out.push(check(7, format!("{name} G(b)∧|m⟩ = 0 iff H(b⊗b°_m) ≤ 0 ({tested} letters)"), bad_kill + bad_keep == 0, format!("{bad_kill} not killed, {bad_keep} wrongly killed"), "0, 0"));
            let mut bad = 0;
            let mut count = 0;
            for m in 0..2i64 {
                for i in t.indices() {
                    let top = fk.lambda(m).pairing(i);
                    let mut b = Some(fk.ground(m));
                    for kk in 0..=top {
                        let got = fk.f_divided(i, kk as usize, &fk.vacuum(m))?;
                        let want = fk.wedge_word(&[b.expect("string of length top")], &fk.vacuum(m + 1));
                        bad += usize::from(got != want);
                        count += 1;
                        b = b.and_then(|x| t.f(i, x));
                    }
                }
            }
            out.push(check(7, format!("{name} f_i^(k)|m⟩ = G(f̃_i^k b°_m)∧|m+1⟩ ({count} cases)"), bad == 0, format!("{bad} failures"), "0 failures"));
        }
    }
    Ok(out)
}

fn confluence(cfg: &Config) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for t in minimal_types(cfg) {
        let e = Engine::new(t.clone());
        let ls = t.letters().to_vec();
        let mut bad = 0;
        for _ in 0..200 {
            let r = rng.gen_range(1..=4);
            let w: Word = (0..r).map(|_| Elem::new(ls[rng.gen_range(0..ls.len())], rng.gen_range(-cfg.window..=cfg.window))).collect();
            let x = WedgeVec::basis(w);
            let a = e.straighten(&x);
            let ok = a == e.rewrite(&x, true) && a == e.rewrite(&x, false) && e.straighten(&a) == a;
            bad += usize::from(!ok);
        }
        out.push(check(8, format!("{} 200 random words", t.name()), bad == 0, format!("{bad} disagreements"), "0 disagreements"));
    }
    Ok(out)
}

fn crystal_limit(cfg: &Config) -> Result<Vec<Check>> {
    let mut types = minimal_types(cfg);
    if cfg.only.is_none() {
        for (f, n, k) in [(Family::A2Even, 2, 1), (Family::B1, 4, 1), (Family::D2, 3, 1), (Family::A1K, 1, 3)] {
            types.push(AffineType::new(f, n, k)?);
        }
    }
    let zero = num_rational::BigRational::from_integer(0.into());
    let one = num_rational::BigRational::from_integer(1.into());
    let mut out = Vec::new();
    for t in types {
        let e = Engine::new(t.clone());
        let (mut bad_s, mut bad_9, mut rels) = (0, 0, 0);
        for &i in t.letters() {
            for &j in t.letters() {
                let r = e.rel_base(i, j)?;
                let lead = e.leading(i, j);
                for ((x, y), cf) in r.iter() {
                    if (*x, *y) != lead {
                        bad_s += usize::from(!(cf.is_laurent() && cf.val().is_some_and(|v| v >= 1)) || e.h(*x, *y) <= 0);
                    }
                }
                for dz in -3..=0 {
                    let b1 = Elem::new(i, 0);
                    let b2 = Elem::new(j, dz - t.energy_cl(i, j));
                    let h = e.h(b1, b2);
                    let r = e.rel_general(b1, b2)?;
                    rels += 1;
                    for ((x, y), cf) in r.iter() {
                        let want = if (*x, *y) == (b1, b2) || (h < 0 && (*x, *y) == (b1.shift(h), b2.shift(-h))) { &one } else { &zero };
                        bad_9 += usize::from(cf.at_zero().as_ref() != Some(want));
                    }
                }
            }
        }
        out.push(check(9, format!("{} base relations: non-leading coefficients in qA", t.name()), bad_s == 0, format!("{bad_s} violations"), "0"));
        out.push(check(9, format!("{} {rels} general relations at q=0", t.name()), bad_9 == 0, format!("{bad_9} violations"), "0"));
    }
    Ok(out)
}

fn character(cfg: &Config) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cases = [(Family::A2Even, 1usize, 1usize, 0usize), (Family::A1K, 1, 2, 0), (Family::A1K, 1, 2, 1)];
    for (f, n, k, kappa) in cases {
        let fk = fock(f, n, k, kappa)?;
        let t = fk.eng.t.clone();
        let name = label(&t, kappa);
        let depth = cfg.delta_degree * t.h();
        let a = fk.character_count(0, depth, None);
        let b = fk.character_count(0, depth, Some(Caps::for_depth(depth).enlarged()));
        out.push(check(10, format!("{name} shift decomposition to depth {depth}"), a.ok() && a == b, format!("{:?}", a.normal), format!("{:?}", a.product)));
        let mut bad = 0;
        for m in 0..2 {
            for i in t.indices() {
                let top = fk.lambda(m).pairing(i);
                for nn in 0..=top + 1 {
                    let mu = fk.lambda(m).sub(&t.alpha(i).scale(nn));
                    let dim = fk.weight_basis(m, &mu, None)?.len();
                    bad += usize::from(dim != usize::from(nn <= top));
                }
            }
        }
        out.push(check(10, format!("{name} dim (F_m)_(λ_m − nα_i)"), bad == 0, format!("{bad} mismatches"), "1 for n ≤ ⟨h_i,λ_m⟩, else 0"));
    }
    Ok(out)
}

fn young() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in [1usize, 2] {
        let y = Young::new(n)?;
        let fk = y.fock()?;
        let fail = y.transport_check(&fk, 8)?;
        let shown = fail.as_ref().map(|f| format!("{} on {:?}: {} vs {}", f.gen, f.diagram, f.young, f.fock)).unwrap_or_else(|| "agree".into());
        out.push(check(11, format!("n={n} transport identity, ≤ 8 boxes"), fail.is_none(), shown, "agree"));
        let mut adj = true;
        for i in 0..=n {
            adj &= y.adjoint_check(i, 6)?;
        }
        out.push(check(11, format!("n={n} (f_i X, Y) = (X, q_i e_i t_i Y) to degree 6"), adj, adj, true));
    }
    let y = Young::new(1)?;
    let one = RatQ::one();
    let norms = [
        (vec![2, 1], one.clone()),
        (vec![3], &one + &q(2)),
        (vec![3, 3], &(&one + &q(2)) * &(&one - &q(4))),
    ];
    for (d, want) in norms {
        let got = y.norm(&d);
        out.push(check(11, format!("‖{d:?}‖²"), got == want, &got, &want));
    }
    let red = y.reduce_q1(8);
    let want: Vec<usize> = (0..=8).map(distinct_partitions).collect();
    let ok = red == want && want == vec![1, 1, 1, 2, 2, 3, 4, 5, 6] && y.reduced_well_defined(8)?;
    out.push(check(11, "reduced q→1 dimensions, degree ≤ 8", ok, format!("{red:?}"), format!("{want:?}")));
    Ok(out)
}

fn dtwo_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for name in dtwo::CHECKS {
        let r = dtwo::run_check(2, name, None)?;
        let how = match r.degree_bound {
            Some(b) => format!("{} points, degree bound {b}, exact in q", r.points),
            None => "series, exact in q".into(),
        };
        out.push(check(12, format!("n=2 {name}"), r.ok, format!("{} ({how})", r.ok), true));
    }
    Ok(out)
}

fn span(cfg: &Config) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (f, n, k) in [(Family::A2Even, 1usize, 1usize), (Family::A1K, 1, 2)] {
        let e = Engine::new(AffineType::new(f, n, k)?);
        let res = verify_all(&e, cfg.window);
        let members = res.iter().filter(|r| r.result == Membership::Member).count();
        out.push(check(13, format!("{} base relations in N, window ±{}", e.t.name(), cfg.window), members == res.len(), format!("{members}/{}", res.len()), format!("{}/{}", res.len(), res.len())));
    }
    Ok(out)
}

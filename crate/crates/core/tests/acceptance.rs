//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::time::{Duration, Instant};

use common::{ap_system, lift, Flavour, Gen};
use lagrel::diagram::axioms::check_all;
use lagrel::diagram::lov::{f64_unitarity_defects, lov_relation_exact, lov_symplectic_exact, lov_symplectic_f64, lov_to_diagram, Angle, LovCircuit, LovGate};
use lagrel::diagram::protocols::demo_teleportation;
use lagrel::diagram::synth::synthesize_normal_form;
use lagrel::gaussian::{covariance_to_phase, phase_to_covariance, qgauss_project, PhaseMatrix};
use lagrel::lagrangian::{is_symplectic, omega};
use lagrel::linalg::is_psd_hermitian;
use lagrel::scalar::{q, qi};
use lagrel::{interpret, AffineRelation, Calculus, CirclePoint, ExactField, Field, LagRel, Matrix, Rational, C};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: fmt::Display>(r: Result<T, E>, ctx: &str) -> Result<T, String> {
    r.map_err(|e| format!("{ctx}: {e}"))
}

fn axiom_soundness() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for calc in Calculus::all() {
        let reports = ok(check_all(calc, 5, 2024), calc.name())?;
        for r in &reports {
            ensure(r.samples >= 5, || format!("{} {} ran {} samples", calc.name(), r.name, r.samples))?;
            ensure(r.passed(), || format!("{} axiom {} fails at {:?}", calc.name(), r.name, r.counterexample))?;
        }
        total += reports.len();
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("suite took {took:?}"))?;
    Ok(format!("{total} axioms x 5 samples, {:.1}s", took.as_secs_f64()))
}

fn ap_uniqueness() -> Outcome {
    let mut g = Gen::new(1);
    for case in 0..100 {
        let n = g.int(1, 3) as usize;
        let data = g.state_data(n, Flavour::Complex);
        let (s, a) = ap_system(&data);
        let direct = ok(LagRel::from_constraints(0, n, &s, &a), "constraints")?;

        // Mixed and redundant rows.
        let m = g.invertible_c(n);
        let extra = g.cvec(n);
        let ms = m.dot(&s);
        let ma = m.mul_vec(&a).unwrap();
        let mut rows = ms.row_vecs();
        let mut rhs = ma.clone();
        rows.push((0..2 * n).map(|j| (0..n).map(|i| extra[i].clone() * ms.get(i, j).clone()).fold(C::zero(), |x, y| x + y)).collect());
        rhs.push((0..n).map(|i| extra[i].clone() * ma[i].clone()).fold(C::zero(), |x, y| x + y));
        let mixed = ok(LagRel::from_constraints(0, n, &Matrix::from_rows(rows, 2 * n).unwrap(), &rhs), "mixed")?;

        // Image form with a shuffled basis and another base point.
        let basis = s.kernel().dot(&g.invertible_c(n));
        let offset = basis.mul_vec(&g.cvec(n)).unwrap();
        let point: Vec<C> = data.point.iter().zip(offset).map(|(p, o)| p.clone() + o).collect();
        let image = ok(LagRel::from_image(0, n, &basis, &point), "image")?;

        // Through a symplectic map and back.
        let u = g.symplectic(n);
        let c = g.cvec(2 * n);
        let there = ok(LagRel::symplectic_graph(&u, &c), "graph")?;
        let round = ok(direct.compose(&there).and_then(|r| r.compose(&there.converse())), "round trip")?;

        let want = ok(direct.ap_form(), "ap")?;
        ensure(want.pivots == data.pivots && want.phi == data.phi && want.l == data.l, || format!("case {case}: AP form differs from its generating data: {want}"))?;
        for (name, r) in [("mixed", &mixed), ("image", &image), ("symplectic", &round)] {
            let got = ok(r.ap_form(), name)?;
            ensure(got.to_string() == want.to_string(), || format!("case {case} {name}: {got} vs {want}"))?;
        }
    }
    Ok("100 states x 3 presentations".into())
}

fn positivity_agreement() -> Outcome {
    let mut g = Gen::new(2);
    let mut positive = 0;
    let flavours = [Flavour::Positive, Flavour::NearPositive, Flavour::Complex, Flavour::QuasiReal];
    for case in 0..500 {
        let n = g.int(1, 3) as usize;
        let fl = flavours[case % flavours.len()];
        let r = if g.coin(0.3) {
            let k = g.int(0, n as i64) as usize;
            g.relation(k, n - k, fl)
        } else {
            g.state(n, fl)
        };
        let a = ok(r.is_positive_ap(), "AP test")?;
        let b = ok(r.is_positive_hermitian(), "Hermitian test")?;
        ensure(a == b, || format!("case {case}: AP {a}, Hermitian {b} on {r}"))?;
        ensure(a || !matches!(fl, Flavour::Positive | Flavour::QuasiReal), || format!("case {case}: generated positive state rejected: {r}"))?;
        positive += a as usize;
    }
    ensure(positive > 100 && positive < 400, || format!("degenerate sample: {positive} positive"))?;
    Ok(format!("500 relations, {positive} positive, 0 disagreements"))
}

fn closure() -> Outcome {
    let mut g = Gen::new(3);
    for (flavour, check) in [(Flavour::Positive, LagRel::is_positive as fn(&LagRel) -> lagrel::Result<bool>), (Flavour::QuasiReal, LagRel::is_quasi_real)] {
        for case in 0..100 {
            let (a, b, c) = (g.int(0, 2) as usize, g.int(0, 2) as usize, g.int(0, 2) as usize);
            let f = g.relation(a, b, flavour);
            let h = g.relation(b, c, flavour);
            for (what, r) in [("f", &f), ("h", &h)] {
                ensure(ok(check(r), what)?, || format!("{flavour:?} case {case}: generator {what} not in class"))?;
            }
            let composite = if g.coin(0.7) { ok(f.compose(&h), "compose")? } else { f.tensor(&h) };
            ensure(ok(check(&composite), "composite")?, || format!("{flavour:?} case {case}: {composite}"))?;
        }
    }
    Ok("100 positive + 100 quasi-real composites".into())
}

fn synthesis() -> Outcome {
    let mut g = Gen::new(4);
    for (flavour, calc) in [(Flavour::QuasiReal, Calculus::Gga), (Flavour::Positive, Calculus::Gqga)] {
        for case in 0..100 {
            let n = g.int(1, 3) as usize;
            let r = g.state(n, flavour);
            let d = ok(synthesize_normal_form(&r, calc), "synthesize")?;
            ok(d.check_fragment(calc), "fragment")?;
            let back = ok(interpret(&d, calc), "interpret")?;
            ensure(back == r, || format!("{} case {case}: {back} vs {r}", calc.name()))?;
        }
    }
    Ok("100 quasi-real (gga) + 100 positive (gqga) states".into())
}

fn wigner_bijection() -> Outcome {
    let mut g = Gen::new(5);
    for case in 0..50 {
        let n = g.int(1, 3) as usize;
        let u = g.sym(n);
        let v = g.pd(n);
        let phi = Matrix::from_fn(n, n, |i, j| C::new(u.get(i, j).clone(), v.get(i, j).clone()));
        let sigma = ok(phase_to_covariance(&phi), "forward")?;
        ensure(ok(sigma.det(), "det")? == Rational::one(), || format!("case {case}: det Σ ≠ 1"))?;
        let herm = lift(&sigma).add(&omega(n).scale(&C::i())).unwrap();
        ensure(ok(is_psd_hermitian(&herm), "psd")?, || format!("case {case}: Σ + iΩ not PSD"))?;
        let back = ok(covariance_to_phase(&sigma), "backward")?;
        ensure(back == phi, || format!("case {case}: {back} vs {phi}"))?;
    }
    Ok("50 phase matrices".into())
}

fn gauss_functoriality() -> Outcome {
    let mut g = Gen::new(6);
    for case in 0..100 {
        let (n, m, k) = (g.int(0, 3) as usize, g.int(1, 3) as usize, g.int(0, 3) as usize);
        let f = g.gauss_map(n, m);
        let h = g.gauss_map(m, k);
        let lhs = ok(f.then(&h), "compose")?.to_gaussrel();
        let rhs = ok(f.to_gaussrel().compose(&h.to_gaussrel()), "relations")?;
        ensure(lhs == rhs, || format!("case {case}: {lhs} vs {rhs}"))?;
    }
    Ok("100 pairs".into())
}

fn projection() -> Outcome {
    let mut g = Gen::new(7);
    let phase = |g: &mut Gen, n: usize| {
        let (u, v) = (g.sym(n), g.pd(n));
        let phi = Matrix::from_fn(n, n, |i, j| C::new(u.get(i, j).clone(), v.get(i, j).clone()));
        PhaseMatrix::new(phi, g.rvec(2 * n)).unwrap()
    };
    for case in 0..50 {
        let k = g.int(1, 2) as usize;
        let n = g.int(1, k as i64) as usize;
        let state = phase(&mut g, k);
        let effect = phase(&mut g, n);
        let (cov, mean) = ok(qgauss_project(&state, &effect), "project")?;
        let oracle = ok(state.state().compose(&effect.effect().tensor(&LagRel::identity(k - n))), "oracle")?;
        let got = if k == n {
            ensure(cov.rows() == 0 && mean.is_empty(), || "scalar projection kept modes".into())?;
            LagRel::identity(0)
        } else {
            ok(PhaseMatrix::from_wigner(&cov, &mean), "wigner")?.state()
        };
        ensure(got == oracle, || format!("case {case}: {got} vs {oracle}"))?;
    }
    Ok("50 state/effect pairs".into())
}

fn teleportation() -> Outcome {
    let zero = Rational::zero();
    let perfect = ok(demo_teleportation(&zero, &zero, &zero), "eps 0")?;
    ensure(perfect.channel == LagRel::identity(1), || format!("eps 0 channel {}", perfect.channel))?;
    let mut g = Gen::new(9);
    for eps in [q(1, 4), qi(1), qi(4)] {
        for (a, b) in [(zero.clone(), zero.clone()), (g.rat(), g.rat())] {
            let t = ok(demo_teleportation(&eps, &a, &b), "teleport")?;
            ensure(t.channel == t.direct, || format!("eps {eps} outcome ({a},{b}): {} vs {}", t.channel, t.direct))?;
            ensure(t.channel != LagRel::identity(1), || format!("eps {eps}: noisy channel is the identity"))?;
        }
    }
    Ok("eps 0 gives identity; eps 1/4, 1, 4 diagram = direct".into())
}

fn lov_embedding() -> Outcome {
    let mut g = Gen::new(10);
    let exact = |g: &mut Gen| Angle::Exact(CirclePoint::from_tan_half(&g.rat()));
    let gates = |a: Angle, b: Angle, c: Angle| {
        vec![
            LovGate::PhaseShift { wire: 0, angle: a },
            LovGate::WavePlate { wire: 1, angle: b },
            LovGate::BeamSplitter { wire: 0, angle: c },
            LovGate::PolarisingBeamSplitter { wire: 0 },
        ]
    };
    for case in 0..25 {
        for gate in gates(exact(&mut g), exact(&mut g), exact(&mut g)) {
            let circuit = LovCircuit { wires: 2, gates: vec![gate.clone()] };
            let s = ok(lov_symplectic_exact(&circuit), "exact")?;
            ensure(is_symplectic(&s), || format!("case {case}: {gate:?} not symplectic"))?;
            ensure(s.transpose().dot(&s) == Matrix::identity(s.rows()), || format!("case {case}: {gate:?} not orthogonal"))?;
            let via = ok(lov_to_diagram(&circuit).and_then(|d| interpret(&d, Calculus::Gqga)), "diagram")?;
            ensure(via == ok(lov_relation_exact(&circuit), "relation")?, || format!("case {case}: {gate:?} diagram differs"))?;
        }
    }
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let mut angle = || Angle::Float(g.rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
        for gate in gates(angle(), angle(), angle()) {
            let s = ok(lov_symplectic_f64(&LovCircuit { wires: 2, gates: vec![gate] }), "float")?;
            let (a, b) = f64_unitarity_defects(&s);
            worst = worst.max(a).max(b);
        }
    }
    ensure(worst <= 1e-9, || format!("float defect {worst:e}"))?;
    let bs0 = LovCircuit { wires: 2, gates: vec![LovGate::BeamSplitter { wire: 0, angle: Angle::Exact(CirclePoint::identity()) }] };
    ensure(ok(lov_relation_exact(&bs0), "bs0")? == LagRel::identity(4), || "beamsplitter at 0 is not the identity".into())?;
    let bs0f = LovCircuit { wires: 2, gates: vec![LovGate::BeamSplitter { wire: 0, angle: Angle::Float(0.0) }] };
    let s = ok(lov_symplectic_f64(&bs0f), "bs0 float")?;
    let dev = s.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, x)| (x - if i == j { 1.0 } else { 0.0 }).abs())).fold(0.0, f64::max);
    ensure(dev <= 1e-12, || format!("float beamsplitter at 0 deviates by {dev:e}"))?;
    Ok(format!("100 exact generators, 400 float generators (max defect {worst:.1e}), bs(0) = id"))
}

use rand::Rng;

/// The prime field with five elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
struct F5(u8);

impl fmt::Display for F5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for F5 {
    type Output = F5;
    fn add(self, o: F5) -> F5 {
        F5((self.0 + o.0) % 5)
    }
}

impl Sub for F5 {
    type Output = F5;
    fn sub(self, o: F5) -> F5 {
        F5((self.0 + 5 - o.0) % 5)
    }
}

impl Mul for F5 {
    type Output = F5;
    fn mul(self, o: F5) -> F5 {
        F5((self.0 * o.0) % 5)
    }
}

impl Neg for F5 {
    type Output = F5;
    fn neg(self) -> F5 {
        F5((5 - self.0) % 5)
    }
}

impl Field for F5 {
    const EXACT: bool = true;
    fn zero() -> Self {
        F5(0)
    }
    fn one() -> Self {
        F5(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        (1..5).map(F5).find(|y| (*self * *y).0 == 1)
    }
    fn from_i64(n: i64) -> Self {
        F5(n.rem_euclid(5) as u8)
    }
}

impl ExactField for F5 {}

fn vectors(len: usize) -> Vec<Vec<F5>> {
    (0..5usize.pow(len as u32)).map(|mut k| (0..len).map(|_| { let d = F5((k % 5) as u8); k /= 5; d }).collect()).collect()
}

fn points(r: &AffineRelation<F5>) -> BTreeSet<Vec<F5>> {
    vectors(r.width()).into_iter().filter(|v| r.contains(v)).collect()
}

fn finite_field_composition() -> Outcome {
    let mut g = Gen::new(11);
    let random_relation = |g: &mut Gen, dom: usize, cod: usize| {
        let w = dom + cod;
        let rows = g.int(0, w as i64 + 1) as usize;
        let s = Matrix::from_fn(rows, w, |_, _| F5::from_i64(g.int(0, 4)));
        let a: Vec<F5> = (0..rows).map(|_| F5::from_i64(g.int(0, 4))).collect();
        AffineRelation::from_constraints(dom, cod, &s, &a).unwrap()
    };
    let mut nonempty = 0;
    for case in 0..50 {
        let (a, b, c) = (g.int(0, 2) as usize, g.int(0, 2) as usize, g.int(0, 2) as usize);
        let r = random_relation(&mut g, a, b);
        let s = random_relation(&mut g, b, c);
        let composite = ok(r.compose(&s), "compose")?;
        let (pr, ps) = (points(&r), points(&s));
        let want: BTreeSet<Vec<F5>> = pr
            .iter()
            .flat_map(|p| ps.iter().filter(move |t| t[..b] == p[a..]).map(move |t| p[..a].iter().chain(&t[b..]).copied().collect()))
            .collect();
        ensure(points(&composite) == want, || format!("case {case}: {composite} has {} points, expected {}", points(&composite).len(), want.len()))?;
        nonempty += !want.is_empty() as usize;
    }
    ensure(nonempty >= 10, || format!("only {nonempty} nonempty composites"))?;
    Ok(format!("50 composites ({nonempty} nonempty) match enumeration"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 axiom soundness", axiom_soundness),
        ("2 AP-form uniqueness", ap_uniqueness),
        ("3 positivity equivalence", positivity_agreement),
        ("4 closure", closure),
        ("5 constructive completeness", synthesis),
        ("6 Wigner bijection", wigner_bijection),
        ("7 Gauss functoriality", gauss_functoriality),
        ("8 projection consistency", projection),
        ("9 teleportation", teleportation),
        ("10 LOv embedding", lov_embedding),
        ("11 finite-field composition", finite_field_composition),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let res = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS  {name:<30} {detail} [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<30} {why} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::sync::Arc;

use rand::Rng;

use super::class::CycleClass;
use super::hom::HomMatrix;
use super::instance::ChowInstance;
use super::ChowError;
use crate::exact_linalg::int;

/// Named pass/fail checks with an example witness for each failure.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<(String, bool)>,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        if !ok && !self.checks.iter().any(|(n, v)| n == name && !*v) {
            self.witnesses.push(format!("{name}: {}", witness()));
        }
        match self.checks.iter_mut().find(|(n, _)| n == name) {
            Some(entry) => entry.1 &= ok,
            None => self.checks.push((name.to_string(), ok)),
        }
    }
}

pub fn random_hom<R: Rng>(rng: &mut R, m: usize, n: usize) -> HomMatrix {
    HomMatrix::new(m, n, (0..m * n).map(|_| rng.gen_range(-2..=2)).collect())
}

/// Random signed permutation or unimodular shear of `A^n`.
pub fn random_iso<R: Rng>(rng: &mut R, n: usize) -> HomMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    if i == perm[j] {
                        if rng.gen_bool(0.5) {
                            1
                        } else {
                            -1
                        }
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    if n >= 2 && rng.gen_bool(0.5) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            let k = rng.gen_range(-2..=2);
            let src = rows[b].clone();
            for (x, y) in rows[a].iter_mut().zip(src) {
                *x += k * y;
            }
        }
    }
    HomMatrix::from_rows(n, &rows)
}

fn random_class<R: Rng>(inst: &Arc<ChowInstance>, m: usize, rng: &mut R) -> CycleClass {
    let p = rng.gen_range(0..=(inst.g * m) as i64);
    CycleClass::random(inst, m, p, rng)
}

/// Chow-theory axioms (a)–(d), (c′), (d′) and the projection formula on
/// `tuples` random inputs over powers up to `m_max`.
pub fn axiom_suite<R: Rng>(
    inst: &Arc<ChowInstance>,
    m_max: usize,
    tuples: usize,
    rng: &mut R,
) -> Result<Report, ChowError> {
    let mut rep = Report::default();
    for _ in 0..tuples {
        let (n, m, k) = (
            rng.gen_range(0..=m_max),
            rng.gen_range(0..=m_max),
            rng.gen_range(0..=m_max),
        );
        let p = random_hom(rng, m, n);
        let q = random_hom(rng, k, m);
        let x = random_class(inst, n, rng);
        let y = random_class(inst, m, rng);
        let z = random_class(inst, k, rng);

        let id = HomMatrix::identity(m);
        rep.record(
            "(a) identity",
            y.pullback(&id)? == y && y.pushforward(&id)? == y,
            || y.to_text(),
        );
        let qp = q.compose(&p);
        rep.record(
            "(a) pullback functoriality",
            z.pullback(&qp)? == z.pullback(&q)?.pullback(&p)?,
            || format!("p={p} q={q}"),
        );
        rep.record(
            "(a) pushforward functoriality",
            x.pushforward(&qp)? == x.pushforward(&p)?.pushforward(&q)?,
            || format!("p={p} q={q}"),
        );
        let y2 = random_class(inst, m, rng);
        rep.record(
            "(a) pullback is multiplicative",
            y.product(&y2)?.pullback(&p)? == y.pullback(&p)?.product(&y2.pullback(&p)?)?,
            || format!("p={p}"),
        );
        rep.record(
            "(b) projection formula",
            x.product(&y.pullback(&p)?)?.pushforward(&p)? == x.pushforward(&p)?.product(&y)?,
            || format!("p={p} x={} y={}", x.to_text(), y.to_text()),
        );
        let i = random_iso(rng, m);
        let inv = i.inverse().expect("unimodular");
        rep.record("(c) i_* = (i^{-1})^*", y.pushforward(&i)? == y.pullback(&inv)?, || {
            format!("i={i}")
        });
        rep.record(
            "(c') i_*(1) = 1",
            CycleClass::one(inst, m).pushforward(&i)? == CycleClass::one(inst, m),
            || format!("i={i}"),
        );

        // (d) on powers whose products stay within m_max
        let n1 = rng.gen_range(0..=m_max);
        let n2 = rng.gen_range(0..=m_max - n1);
        let m1 = rng.gen_range(0..=m_max);
        let m2 = rng.gen_range(0..=m_max - m1);
        let r = random_hom(rng, m1, n1);
        let s = random_hom(rng, m2, n2);
        let u = random_class(inst, n1, rng);
        let v = random_class(inst, n2, rng);
        rep.record(
            "(d) tensor law",
            u.external_tensor(&v)?.pushforward(&r.product(&s))?
                == u.pushforward(&r)?.external_tensor(&v.pushforward(&s)?)?,
            || format!("r={r} s={s}"),
        );
        let pr1_src = HomMatrix::projection(n1 + n2, &(0..n1).collect::<Vec<_>>());
        let pr1_dst = HomMatrix::projection(m1 + n2, &(0..m1).collect::<Vec<_>>());
        let r_y = r.product(&HomMatrix::identity(n2));
        rep.record(
            "(d') (r×Y)_* pr_1^* = pr_1^* r_*",
            u.pullback(&pr1_src)?.pushforward(&r_y)? == u.pushforward(&r)?.pullback(&pr1_dst)?,
            || format!("r={r}"),
        );
    }
    Ok(rep)
}

/// Pullback along `n_A` scales numerical parts by `n^{2p}` and deformation parts by `n^{2p-s}`.
pub fn beauville_check<R: Rng>(
    inst: &Arc<ChowInstance>,
    m: usize,
    ns: &[i64],
    rng: &mut R,
) -> Result<Report, ChowError> {
    let mut rep = Report::default();
    let s = inst.weight().unwrap_or(0) as i64;
    for p in 0..=(inst.g * m) as i64 {
        let x = CycleClass::random(inst, m, p, rng);
        for &n in ns {
            let y = x.pullback(&HomMatrix::multiple(m, n))?;
            let num_ok = y.numeric == x.numeric.scale(&int(n).pow((2 * p) as i32));
            let w = 2 * p - s;
            let def_ok = w < 0
                || y.deform
                    .iter()
                    .zip(&x.deform)
                    .all(|(a, b)| *a == b.scale(&int(n).pow(w as i32)));
            rep.record("numerical weight n^{2p}", num_ok, || format!("n={n} p={p}"));
            rep.record("deformation weight n^{2p-s}", def_ok, || format!("n={n} p={p}"));
        }
    }
    Ok(rep)
}

/// Numerical projection commutes with pullback, pushforward and products.
pub fn projection_morphism_check<R: Rng>(
    inst: &Arc<ChowInstance>,
    m_max: usize,
    tuples: usize,
    rng: &mut R,
) -> Result<Report, ChowError> {
    let mut rep = Report::default();
    for _ in 0..tuples {
        let (n, m) = (rng.gen_range(0..=m_max), rng.gen_range(0..=m_max));
        let f = random_hom(rng, m, n);
        let x = random_class(inst, n, rng);
        let y = random_class(inst, m, rng);
        let y2 = random_class(inst, m, rng);
        rep.record(
            "pullback",
            y.pullback(&f)?.numerical_projection() == y.numerical_projection().pullback(&f)?,
            || format!("f={f}"),
        );
        rep.record(
            "pushforward",
            x.pushforward(&f)?.numerical_projection() == x.numerical_projection().pushforward(&f)?,
            || format!("f={f}"),
        );
        rep.record(
            "product",
            y.product(&y2)?.numerical_projection() == y.numerical_projection().product(&y2.numerical_projection())?,
            || y.to_text(),
        );
    }
    Ok(rep)
}

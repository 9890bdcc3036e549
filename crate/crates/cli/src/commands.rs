use qpl_core::coherent::FiniteCoherentFamily;
use qpl_core::export::{complex, complex_list};
use qpl_core::fock::FockSpace;
use qpl_core::modular::{az_state, modular_cell_coords, momentum_amplitudes, nslit_evolve};
use qpl_core::schwinger::{gauss_closed_form, gauss_trace, momentum_ket, position_ket};
use qpl_core::weak::{self, WeakConfig};
use qpl_core::weyl_wigner::{commutator_prefactor, structure_constants, wigner_function, ww_basis, PhasePoint};
use qpl_core::{coherent, random, Ket, Operator, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{self, PointerKind, WeakFile};
use crate::error::{check_dim, CliError, CliResult, MAX_DIM, MAX_STRUCTURE_DIM, MAX_TRUNC};
use crate::output::{cplx, num, Report};
use crate::parse;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Density operator for a state selector.
fn density(n: usize, selector: &[String], seed: u64) -> CliResult<Operator> {
    let bad = || CliError::Usage(format!("invalid state selector '{}'", selector.join(" ")));
    let head = selector.first().ok_or_else(bad)?;
    let index = |s: &str| s.parse::<usize>().ok().filter(|&k| k < n);
    let ket: Ket = match head.as_str() {
        "mixed" if selector.len() == 1 => return Ok(Operator::identity(n).scale(C64::new(1.0 / n as f64, 0.0))),
        "random" if selector.len() == 1 => return Ok(random::density(&mut rng(seed), n)),
        "coherent" if selector.len() == 3 => {
            let (m, q) = (index(&selector[1]).ok_or_else(bad)?, index(&selector[2]).ok_or_else(bad)?);
            coherent::coherent_state(n, m, q)?
        }
        s if selector.len() == 1 && s.starts_with('u') => position_ket(n, index(&s[1..]).ok_or_else(bad)? as i64)?,
        s if selector.len() == 1 && s.starts_with('v') => momentum_ket(n, index(&s[1..]).ok_or_else(bad)? as i64)?,
        _ => {
            let amps = parse::complex_list(&selector.join(",")).map_err(|_| bad())?;
            if amps.len() != n {
                return Err(CliError::Usage(format!("expected {n} amplitudes, got {}", amps.len())));
            }
            Ket::new(amps)?.normalized()?
        }
    };
    Ok(ket.projector())
}

pub fn wigner(n: usize, selector: &[String], seed: u64) -> CliResult<Report> {
    check_dim("n", n, MAX_DIM)?;
    let rho = density(n, selector, seed)?;
    let w = wigner_function(&rho, &ww_basis(n)?)?;
    let grid: Vec<Value> = w.rows().map(|r| json!(r)).collect();
    let json = json!({
        "n": n,
        "state": selector.join(" "),
        "axes": { "row": "m (momentum)", "col": "n (position)" },
        "w": grid,
        "negativity": w.negativity,
        "min": w.min,
        "marginals": { "position": w.position_marginal(), "momentum": w.momentum_marginal() },
    });
    let rows = PhasePoint::all(n).map(|p| vec![p.m.to_string(), p.n.to_string(), num(w.get(p))]).collect();
    Ok(Report { json, header: vec!["m", "n", "w"], rows })
}

pub fn gauss(lo: usize, hi: usize) -> CliResult<Report> {
    if lo == 0 || lo > hi {
        return Err(CliError::Usage(format!("empty or invalid range {lo}..={hi}")));
    }
    check_dim("n_max", hi, MAX_DIM)?;
    let mut table = vec![];
    let mut rows = vec![];
    for n in lo..=hi {
        let tr = gauss_trace(n)?;
        let cf = gauss_closed_form(n);
        let matches = (tr - cf).norm() < 1e-10;
        table.push(
            json!({ "n": n, "trace": complex(tr), "closed_form": complex(cf), "odd": n % 2 == 1, "match": matches }),
        );
        let [tr_re, tr_im] = cplx(tr);
        let [cf_re, cf_im] = cplx(cf);
        rows.push(vec![n.to_string(), tr_re, tr_im, cf_re, cf_im, (n % 2 == 1).to_string(), matches.to_string()]);
    }
    Ok(Report {
        json: json!({ "rows": table }),
        header: vec!["n", "trace_re", "trace_im", "closed_re", "closed_im", "odd", "match"],
        rows,
    })
}

fn generator<'a>(f: &'a FockSpace, name: &str) -> &'a Operator {
    match name {
        "Q" => &f.q,
        "P" => &f.p,
        "H0" => &f.h0,
        "g" => &f.g,
        "k" => &f.k,
        _ => &f.nop,
    }
}

pub fn weak(text: &str, seed: Option<u64>) -> CliResult<Report> {
    let file: WeakFile = config::parse(text)?;
    check_dim("trunc", file.trunc, MAX_TRUNC)?;
    if file.trunc < 2 {
        return Err(CliError::Bounds("trunc must be at least 2".into()));
    }
    let dim = config::system_dim(&file);
    check_dim("system dimension", dim, MAX_DIM)?;
    let seed = seed.or(file.seed).unwrap_or(0);
    let mut r = rng(seed);
    let pre = config::build_ket(&file.pre, dim, &mut r)?;
    let post = config::build_ket(&file.post, dim, &mut r)?;
    let obs = config::build_obs(&file.obs, dim, &mut r)?;
    let fock = FockSpace::new(file.trunc)?;
    let pointer = match file.pointer {
        PointerKind::Vacuum => fock.vacuum(),
        PointerKind::Coherent(z) => fock.coherent(z)?,
    };
    let cfg = WeakConfig::new(pre, post, obs, generator(&fock, &file.generator).clone(), pointer, file.eps)?;
    let ow = weak::weak_value(&cfg)?;
    let radius = weak::spectral_radius(&cfg.obs)?;
    let probability = weak::post_select(&weak::evolve_exact(&cfg)?, &cfg.post)?.probability;

    let mut shifts = serde_json::Map::new();
    let mut rows = vec![];
    for m in &file.measure {
        let op = generator(&fock, m);
        let measured = weak::measured_shift(&cfg, op)?;
        let predicted = weak::predicted_shift(&cfg, op)?;
        let h = weak::halving(&cfg, op)?;
        shifts.insert(
            m.clone(),
            json!({
                "measured": measured,
                "predicted": predicted,
                "residual": (measured - predicted).abs(),
                "halving": { "residual": h.residual, "residual_half": h.residual_half, "ratio": h.ratio },
            }),
        );
        rows.push(vec![m.clone(), num(measured), num(predicted), num((measured - predicted).abs()), num(h.ratio)]);
    }
    let mut json = json!({
        "config": file.raw,
        "seed": seed,
        "eps": file.eps,
        "weak_value": complex(ow.value),
        "spectral_radius": radius,
        "amplified": ow.value.norm() > radius + 1e-12,
        "probability": probability,
        "shifts": shifts,
    });
    if let (PointerKind::Coherent(z), "N") = (file.pointer, file.generator.as_str()) {
        let measured = weak::annihilator_shift(&fock, &cfg)?;
        let predicted = weak::predicted_annihilator_shift(&cfg, z)?;
        // Q = √2 Re a, P = √2 Im a
        let s = 2f64.sqrt();
        json["annihilator"] = json!({
            "measured": complex(measured),
            "predicted": complex(predicted),
            "residual": (measured - predicted).norm(),
            "dq_predicted": s * predicted.re,
            "dp_predicted": s * predicted.im,
        });
    }
    Ok(Report { json, header: vec!["observable", "measured", "predicted", "residual", "halving_ratio"], rows })
}

pub fn az(na: usize, nb: usize, j: usize, sigma: usize) -> CliResult<Report> {
    check_dim("na", na, MAX_DIM)?;
    check_dim("nb", nb, MAX_DIM)?;
    check_dim("na*nb", na * nb, MAX_DIM)?;
    if j >= na || sigma >= nb {
        return Err(CliError::Usage(format!("labels ({j}, {sigma}) outside Z_{na} x Z_{nb}")));
    }
    let st = az_state(na, nb, j, sigma)?;
    let cell = modular_cell_coords(&st)?;
    let (ev_v, ev_u) = st.eigenvalues()?;
    let json = json!({
        "na": na,
        "nb": nb,
        "j": j,
        "sigma": sigma,
        "amplitudes": complex_list(st.ket.amps()),
        "norm": st.ket.norm(),
        "eigenvalues": { "v_x_i": complex(ev_v), "i_x_u": complex(ev_u) },
        "phases": { "p_mod": cell.p_mod, "q_mod": cell.q_mod },
        "cell_grid": { "na": na, "nb": nb, "p_mod": cell.p_mod, "q_mod": cell.q_mod, "cells": cell.cells },
    });
    let rows = st
        .ket
        .amps()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let [re, im] = cplx(*a);
            vec![i.to_string(), re, im]
        })
        .collect();
    Ok(Report { json, header: vec!["index", "re", "im"], rows })
}

pub fn nslit(n: usize, period: usize, samples: Option<&str>, seed: u64) -> CliResult<Report> {
    check_dim("n", n, MAX_DIM)?;
    if period == 0 || !n.is_multiple_of(period) {
        return Err(CliError::Usage(format!("period {period} does not divide {n}")));
    }
    let samples: Vec<f64> = match samples {
        Some(s) => parse::real_list(s)?,
        None => {
            let mut r = rng(seed);
            let cell: Vec<f64> = (0..period)
                .map(|_| rand::Rng::random_range(&mut r, -std::f64::consts::PI..std::f64::consts::PI))
                .collect();
            (0..n).map(|i| cell[i % period]).collect()
        }
    };
    let out = nslit_evolve(n, period, &samples)?;
    let amps = momentum_amplitudes(&out)?;
    let probs: Vec<f64> = amps.iter().map(|a| a.norm_sqr()).collect();
    let support: Vec<usize> = probs.iter().enumerate().filter(|(_, p)| **p > 1e-20).map(|(m, _)| m).collect();
    let json = json!({
        "n": n,
        "period": period,
        "samples": samples,
        "momentum": complex_list(&amps),
        "probabilities": probs,
        "support": support,
    });
    let rows = amps
        .iter()
        .enumerate()
        .map(|(m, a)| {
            let [re, im] = cplx(*a);
            vec![m.to_string(), re, im, num(a.norm_sqr())]
        })
        .collect();
    Ok(Report { json, header: vec!["m", "re", "im", "probability"], rows })
}

pub fn structure(n: usize) -> CliResult<Report> {
    check_dim("n", n, MAX_STRUCTURE_DIM)?;
    let t = structure_constants(n)?;
    let points: Vec<PhasePoint> = PhasePoint::all(n).collect();
    let mut entries = vec![];
    let mut rows = vec![];
    for (ia, &a) in points.iter().enumerate() {
        for &b in &points[ia + 1..] {
            for &c in &points {
                let v = t.get(a, b, c);
                if v.abs() < 1e-15 {
                    continue;
                }
                entries.push(json!({ "a": [a.m, a.n], "b": [b.m, b.n], "c": [c.m, c.n], "value": v }));
                rows.push(
                    [a.m, a.n, b.m, b.n, c.m, c.n]
                        .iter()
                        .map(|x| x.to_string())
                        .chain(std::iter::once(num(v)))
                        .collect(),
                );
            }
        }
    }
    let json = json!({
        "n": n,
        "prefactor": complex(commutator_prefactor(n)),
        "convention": "[D_a, D_b] = prefactor * sum_c value(a,b,c) D_c; listed for a < b, antisymmetric",
        "entries": entries,
    });
    Ok(Report { json, header: vec!["a_m", "a_n", "b_m", "b_n", "c_m", "c_n", "value"], rows })
}

pub fn coherent_gram(n: usize) -> CliResult<Report> {
    check_dim("n", n, MAX_DIM)?;
    let fam = FiniteCoherentFamily::new(n)?;
    let gram = fam.gram();
    let points: Vec<PhasePoint> = PhasePoint::all(n).collect();
    let pair = fam.orthogonal_pair(1e-10).map(|(a, b, ov)| json!({ "a": [a.m, a.n], "b": [b.m, b.n], "overlap": ov }));
    let json = json!({
        "n": n,
        "points": points.iter().map(|p| [p.m, p.n]).collect::<Vec<_>>(),
        "reference": complex_list(fam.reference().amps()),
        "gram": gram.iter().map(|r| complex_list(r)).collect::<Vec<_>>(),
        "resolution_scale": n,
        "orthogonal_pair": pair,
    });
    let mut rows = vec![];
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate() {
            let [re, im] = cplx(gram[i][j]);
            rows.push(vec![
                a.m.to_string(),
                a.n.to_string(),
                b.m.to_string(),
                b.n.to_string(),
                re,
                im,
                num(gram[i][j].norm()),
            ]);
        }
    }
    Ok(Report { json, header: vec!["p", "q", "r", "s", "re", "im", "abs"], rows })
}

//! The `verify` subcommand: run every cross-module invariant on one braid
//! and print one ok/FAIL line per check. Any failure exits with code 4.

use crate::output::CliError;
use llab_core::algebra::fq::{self, Fq};
use llab_core::algebra::poly::eliminate_t;
use llab_core::augvar::{
    enumerate_augmentations, point_counts, stratify, torus_act, torus_elements,
};
use llab_core::barannikov::{r_vector, ruling_of};
use llab_core::braidfront::{ng_resolution, parse_braid, rainbow_closure, BasepointMode};
use llab_core::dga::build_dga;
use llab_core::rulings::{
    dimension_and_top_ruling, enumerate_rulings, predicted_counts, CrossingClass,
};
use llab_core::sheafrep::{
    build_quiver, equivariance_and_injectivity, phi_of_augmentation, sheaf_count_oracle_n2,
    validate_rep,
};
use llab_core::Dga;
use std::collections::BTreeSet;

struct Battery {
    failures: usize,
}

impl Battery {
    fn check(&mut self, name: &str, result: Result<(), String>) {
        match result {
            Ok(()) => println!("ok - {name}"),
            Err(msg) => {
                println!("FAIL - {name}: {msg}");
                self.failures += 1;
            }
        }
    }
}

/// Count augmentations with the assignment space split across workers; the
/// per-worker counts merge by summation, so the result is deterministic for
/// any thread count.
fn parallel_aug_count(dga: &Dga, q: u8, threads: usize) -> Result<u64, String> {
    if threads <= 1 || dga.num_crossings() == 0 {
        return Ok(enumerate_augmentations(dga, q).map_err(|e| e.to_string())?.len() as u64);
    }
    let elems = fq::elements(q).map_err(|e| e.to_string())?;
    let total = std::sync::Mutex::new(0u64);
    std::thread::scope(|scope| {
        for chunk in elems.chunks(elems.len().div_ceil(threads)) {
            let total = &total;
            let dga_ref = &dga;
            let elems = &elems;
            scope.spawn(move || {
                let mut local = 0u64;
                let rest = dga_ref.num_crossings() - 1;
                let space = (q as u64).pow(rest as u32);
                for &first in chunk {
                    let mut alpha = vec![Fq::zero(q); dga_ref.num_crossings()];
                    alpha[0] = first;
                    for idx in 0..space {
                        let mut rem = idx;
                        for slot in alpha.iter_mut().skip(1) {
                            *slot = elems[(rem % q as u64) as usize];
                            rem /= q as u64;
                        }
                        if llab_core::augvar::solve_t_values(
                            dga_ref.n,
                            &dga_ref.letters,
                            dga_ref.mode,
                            &alpha,
                            q,
                        )
                        .is_some()
                        {
                            local += 1;
                        }
                    }
                }
                *total.lock().unwrap() += local;
            });
        }
    });
    Ok(total.into_inner().unwrap())
}

pub fn run_verify(braid_text: &str, qs: &[u8], threads: usize) -> Result<(), CliError> {
    let braid = parse_braid(braid_text).map_err(CliError::usage)?;
    let front = rainbow_closure(&braid, BasepointMode::AllCusps).map_err(CliError::domain)?;
    let lag = ng_resolution(&front).map_err(CliError::domain)?;
    let dga = build_dga(&lag).map_err(CliError::domain)?;
    let connected = braid.is_connected_closure();

    let mut battery = Battery { failures: 0 };

    battery.check(
        "dga: d^2 = 0 and deg(d) = -1",
        dga.check_d_squared().map(|_| ()).map_err(|e| e.to_string()),
    );

    battery.check(
        "dga: crossing differentials vanish",
        dga.generators
            .iter()
            .filter(|g| g.grading == 0)
            .all(|g| dga.differential(g.sym).is_zero())
            .then_some(())
            .ok_or_else(|| "nonzero differential on a degree-0 generator".to_string()),
    );

    let rulings = enumerate_rulings(&front).map_err(CliError::domain)?;
    battery.check("rulings: s + 2r constant", {
        let idx: BTreeSet<usize> = rulings.iter().map(|r| r.s + 2 * r.r).collect();
        if idx.len() <= 1 {
            Ok(())
        } else {
            Err(format!("multiple values {idx:?}"))
        }
    });

    if connected {
        battery.check("rulings: unique r = 0 ruling, even dimension", {
            dimension_and_top_ruling(&front).map(|_| ()).map_err(|e| e.to_string())
        });
    }

    // pointwise t-solving agrees with the symbolic elimination
    battery.check("algebra: eliminate_t bijection over F_2, F_3", {
        (|| -> Result<(), String> {
            let pairs = eliminate_t(&dga).map_err(|e| e.to_string())?;
            for q in [2u8, 3] {
                let augs = enumerate_augmentations(&dga, q).map_err(|e| e.to_string())?;
                let count = augs.len();
                let mut sym_count = 0usize;
                let elems = fq::elements(q).map_err(|e| e.to_string())?;
                let nvars = dga.num_crossings();
                let space = (q as u64).pow(nvars as u32);
                for idx in 0..space {
                    let mut rem = idx;
                    let mut alpha = Vec::with_capacity(nvars);
                    for _ in 0..nvars {
                        alpha.push(elems[(rem % q as u64) as usize]);
                        rem /= q as u64;
                    }
                    if pairs.iter().all(|(_, qpoly)| !qpoly.eval_fq(q, &alpha).is_zero()) {
                        sym_count += 1;
                    }
                }
                if sym_count != count {
                    return Err(format!("q={q}: symbolic {sym_count} vs enumerated {count}"));
                }
            }
            Ok(())
        })()
    });

    for &q in qs {
        let observed = match parallel_aug_count(&dga, q, threads) {
            Ok(v) => v,
            Err(e) => {
                battery.check(&format!("counts over F_{q}"), Err(e));
                continue;
            }
        };
        let predicted = predicted_counts(&front, q).map_err(CliError::domain)?;
        battery.check(&format!("counts over F_{q}: |Aug| = Σ (q-1)^s q^r"), {
            if observed == predicted.aug_total {
                Ok(())
            } else {
                Err(format!("observed {observed}, predicted {}", predicted.aug_total))
            }
        });
        if connected {
            let single_front =
                rainbow_closure(&braid, BasepointMode::Single).map_err(CliError::domain)?;
            let single_dga = build_dga(&ng_resolution(&single_front).map_err(CliError::domain)?)
                .map_err(CliError::domain)?;
            battery.check(&format!("counts over F_{q}: mb and the torus quotient"), {
                match point_counts(&dga, &single_dga, q) {
                    Ok(pc) => {
                        if Some(pc.mb) == predicted.mb_total {
                            Ok(())
                        } else {
                            Err(format!("mb {} vs predicted {:?}", pc.mb, predicted.mb_total))
                        }
                    }
                    Err(e) => Err(e.to_string()),
                }
            });
        }
    }

    for &q in qs.iter().filter(|&&q| q <= 3) {
        let augs = enumerate_augmentations(&dga, q).map_err(CliError::domain)?;
        let predicted = predicted_counts(&front, q).map_err(CliError::domain)?;

        battery.check(&format!("strata over F_{q}: sizes match (q-1)^s q^r"), {
            (|| -> Result<(), String> {
                let strata = stratify(&dga, &augs).map_err(|e| e.to_string())?;
                for st in strata.values() {
                    let pred = predicted
                        .per_ruling
                        .iter()
                        .find(|p| p.key == st.ruling_key)
                        .map(|p| p.aug_stratum)
                        .ok_or_else(|| format!("unexpected ruling {}", st.ruling_key))?;
                    if st.members.len() as u64 != pred {
                        return Err(format!(
                            "stratum {}: observed {}, predicted {pred}",
                            st.ruling_key,
                            st.members.len()
                        ));
                    }
                }
                Ok(())
            })()
        });

        battery.check(&format!("strata over F_{q}: every ruling realized"), {
            (|| -> Result<(), String> {
                let strata = stratify(&dga, &augs).map_err(|e| e.to_string())?;
                for r in &rulings {
                    if !strata.contains_key(&r.key()) {
                        return Err(format!("ruling {} has an empty stratum", r.key()));
                    }
                }
                if strata.len() != rulings.len() {
                    return Err("stratum key outside the enumerated rulings".to_string());
                }
                Ok(())
            })()
        });

        battery.check(&format!("strata over F_{q}: r-coordinates biject"), {
            (|| -> Result<(), String> {
                let strata = stratify(&dga, &augs).map_err(|e| e.to_string())?;
                for st in strata.values() {
                    let ruling = ruling_of(&dga, &st.members[0]).map_err(|e| e.to_string())?;
                    let mut seen = BTreeSet::new();
                    for eps in &st.members {
                        let rv = r_vector(&dga, eps).map_err(|e| e.to_string())?;
                        let mut coords = Vec::new();
                        for (m, class) in ruling.classes.iter().enumerate() {
                            match class {
                                CrossingClass::Switch => {
                                    if rv[m].is_zero() {
                                        return Err(format!("zero r at switch {m}"));
                                    }
                                    coords.push(rv[m]);
                                }
                                CrossingClass::Return => coords.push(rv[m]),
                                CrossingClass::Departure => {
                                    if !rv[m].is_zero() {
                                        return Err(format!("nonzero r at departure {m}"));
                                    }
                                }
                            }
                        }
                        seen.insert(coords);
                    }
                    let expected = (q as u64 - 1).pow(ruling.s as u32) * (q as u64).pow(ruling.r as u32);
                    if seen.len() as u64 != expected {
                        return Err(format!(
                            "stratum {}: image size {} vs (q-1)^s q^r = {expected}",
                            st.ruling_key,
                            seen.len()
                        ));
                    }
                }
                Ok(())
            })()
        });

        battery.check(&format!("torus equivariance of r over F_{q}"), {
            (|| -> Result<(), String> {
                let cm = &dga.diagram.components;
                for eps in &augs {
                    let rv = r_vector(&dga, eps).map_err(|e| e.to_string())?;
                    for lam in torus_elements(q, dga.n).map_err(|e| e.to_string())? {
                        let moved = torus_act(cm, &lam, eps);
                        let rv2 = r_vector(&dga, &moved).map_err(|e| e.to_string())?;
                        for m in 0..dga.letters.len() {
                            let (r, c) = (cm.r_a[m], cm.c_a[m]);
                            let expect =
                                lam[r - 1].inv().unwrap().mul(rv[m]).mul(lam[c - 1]);
                            if rv2[m] != expect {
                                return Err(format!("crossing {m}: {:?} != {:?}", rv2[m], expect));
                            }
                        }
                    }
                }
                Ok(())
            })()
        });

        battery.check(&format!("quiver reps valid over F_{q}"), {
            (|| -> Result<(), String> {
                let quiver = build_quiver(&front);
                for eps in &augs {
                    let rep = phi_of_augmentation(&front, eps).map_err(|e| e.to_string())?;
                    validate_rep(&quiver, &rep).map_err(|e| e.to_string())?;
                }
                Ok(())
            })()
        });

        battery.check(&format!("Φ equivariance and injectivity over F_{q}"), {
            match equivariance_and_injectivity(&dga, q) {
                Ok(rep) if rep.equivariant && rep.injective && rep.orbit_injective => Ok(()),
                Ok(rep) => Err(format!("{rep:?}")),
                Err(e) => Err(e.to_string()),
            }
        });

        if front.n == 2 && connected {
            battery.check(&format!("2-strand line oracle over F_{q}"), {
                (|| -> Result<(), String> {
                    let count = sheaf_count_oracle_n2(&braid, q).map_err(|e| e.to_string())?;
                    let single_front = rainbow_closure(&braid, BasepointMode::Single)
                        .map_err(|e| e.to_string())?;
                    let single_dga = build_dga(&ng_resolution(&single_front).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?;
                    let mb = enumerate_augmentations(&single_dga, q)
                        .map_err(|e| e.to_string())?
                        .len() as u64;
                    if count == (q as u64 - 1) * mb {
                        Ok(())
                    } else {
                        Err(format!("{count} != (q-1)·{mb}"))
                    }
                })()
            });
        }
    }

    if battery.failures > 0 {
        Err(CliError::invariant(format!("{} check(s) failed", battery.failures)))
    } else {
        println!("all checks passed");
        Ok(())
    }
}

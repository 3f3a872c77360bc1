//! Acceptance criteria at exact tolerance. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use octaplex::codes::{boundary_weight, build_2d_pair, build_3d_triple, build_bounded_family, build_family};
use octaplex::controls::{perturb_logical, recolor_vertex, rng};
use octaplex::lattice::build_octaplex;
use octaplex::logicals::{build_logicals, certify_distances, generic_basis, warmup_2d_basis};
use octaplex::metachecks::{build_ladder, verify_counting, verify_global_constraints, LadderRanks};
use octaplex::phasepoly::{composite_sandwich, composite_var, sandwich_identity, PhasePolynomial};
use octaplex::transversal::{check_cccz, check_ccz, check_cz, diagonal_target, octaplex_quartets};

type Outcome = (bool, String);

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let took = start.elapsed();
    (ok && took < budget, format!("{detail}; {:.2}s of {}s", took.as_secs_f64(), budget.as_secs()))
}

fn lattice_counts() -> Outcome {
    timed(Duration::from_secs(5), || {
        let cx = build_octaplex(2).unwrap();
        let counts = cx.counts();
        let chi = cx.euler_characteristic();
        let dd = (2..=4).all(|d| cx.boundary_matrix(d - 1).unwrap().mul(&cx.boundary_matrix(d).unwrap()).unwrap().is_zero());
        let ok = counts == [96, 768, 1024, 384, 32] && chi == 0 && dd && cx.boundary_squared_violation().is_none();
        (ok, format!("counts {counts:?}, euler {chi}, boundary squared zero {dd}"))
    })
}

fn periodic_parameters() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for l in [2, 3] {
        let (o, d) = timed(Duration::from_secs(30), || {
            let fam = build_family(&build_octaplex(l).unwrap()).unwrap();
            let mut good = true;
            let mut ks = Vec::new();
            for b in &fam.blocks {
                let p = b.params();
                ks.push(p.k);
                good &= p.n == 24 * l.pow(4) && p.k == 4;
                good &= b.hx.row_weights().iter().all(|&w| w == 24);
                good &= b.hz.row_weights().iter().all(|&w| w == 3);
            }
            (good, format!("L={l} n={} k={ks:?}", fam.n()))
        });
        ok &= o;
        detail.push(d);
    }
    (ok, detail.join("; "))
}

fn transversal_cccz() -> Outcome {
    timed(Duration::from_secs(60), || {
        let fam = build_family(&build_octaplex(2).unwrap()).unwrap();
        let basis = build_logicals(&fam).unwrap();
        let rep = check_cccz(&fam, &basis);
        let odd: Vec<u64> = rep.conditions.iter().map(|c| c.odd).collect();
        let mut want = octaplex_quartets();
        want.sort();
        let ok = rep.parity_pass() && rep.tuples_scanned >= 1_000_000 && rep.tensor.entries == want;
        (
            ok,
            format!(
                "odd tuples per class {odd:?}, {} tuples, tensor has {} entries against 4 quartets, value counts {} vs {}",
                rep.tuples_scanned,
                rep.tensor.entries.len(),
                rep.comparison.measured_value_count,
                rep.comparison.target_value_count
            ),
        )
    })
}

fn distances() -> Outcome {
    timed(Duration::from_secs(60), || {
        let fam = build_family(&build_octaplex(2).unwrap()).unwrap();
        let basis = build_logicals(&fam).unwrap();
        let mut ok = true;
        let mut seen = Vec::new();
        for b in 0..4 {
            let c = certify_distances(&fam, &basis, b, true).unwrap();
            let exhaustive = c.exhaustive.as_ref().and_then(|e| e.witness.as_ref()).map(Vec::len);
            ok &= exhaustive == Some(2) && c.dz() == Some(2) && c.dx_lower == 64 && c.dx_upper == 64;
            seen.push(format!("{}: dz {:?} dx [{}, {}]", c.block, c.dz(), c.dx_lower, c.dx_upper));
        }
        (ok, seen.join(", "))
    })
}

fn metacheck_ledger() -> Outcome {
    let cx = build_octaplex(2).unwrap();
    let fam = build_family(&cx).unwrap();
    let ladder = build_ladder(&cx, &fam.blocks[0]).unwrap();
    let c = verify_counting(&ladder).unwrap();
    let g = verify_global_constraints(&ladder).unwrap();
    let ok = c.ranks == (LadderRanks { m0: 95, m1: 669, hz: 349, hx: 31 })
        && c.m1_hz_zero
        && c.m0_m1_zero
        && g.planes_zero_sum.len() == 6
        && g.planes_zero_sum.iter().all(|&z| z)
        && g.hyperplanes_zero_sum.len() == 4
        && g.hyperplanes_zero_sum.iter().all(|&z| z)
        && g.planes_rank_gain == 6
        && g.hyperplanes_rank_gain == 4
        && c.total_generators == 380;
    (
        ok,
        format!(
            "ranks {:?}, gains {} and {}, generators {}",
            c.ranks, g.planes_rank_gain, g.hyperplanes_rank_gain, c.total_generators
        ),
    )
}

fn bounded_family() -> Outcome {
    let bf = build_bounded_family(2).unwrap();
    let fam = &bf.family;
    let ks: Vec<usize> = fam.blocks.iter().map(|b| b.params().k).collect();
    let x_ok = bf.x_boundary.iter().flatten().all(|&(w, nb)| [24, 15, 10, 7].contains(&w) && w == boundary_weight(nb));
    let mut z_weights: Vec<usize> = fam.blocks.iter().flat_map(|b| b.hz.row_weights()).collect();
    z_weights.sort();
    z_weights.dedup();
    let z_ok = z_weights.iter().all(|&w| w == 2 || w == 3);
    let rep = check_cccz(fam, &bf.basis());
    let single = rep.tensor.entries == diagonal_target(4, 1);
    let ok = ks.iter().all(|&k| k == 1) && x_ok && z_ok && rep.parity_pass() && single;
    (ok, format!("k {ks:?}, X formula {x_ok}, Z weights {z_weights:?}, parities {}, single CCCZ {single}", rep.parity_pass()))
}

fn warmups() -> Outcome {
    let fam2 = build_2d_pair(2).unwrap();
    let basis2 = warmup_2d_basis(&fam2).unwrap();
    let rep2 = check_cz(&fam2, &basis2);
    let pairing: Vec<Vec<u8>> = (0..2).map(|i| (0..2).map(|j| u8::from(rep2.tensor.get(&[i, j]))).collect()).collect();
    let fam3 = build_3d_triple(2).unwrap();
    let basis3 = generic_basis(&fam3).unwrap();
    let rep3 = check_ccz(&fam3, &basis3);
    let ks: Vec<usize> = fam3.blocks.iter().map(|b| b.params().k).collect();
    let weights_ok = rep3.stabilizer_weights.keys().all(|&w| w == 0 || w == 2);
    let ok = rep2.pass() && rep3.parity_pass() && rep3.comparison.exact_match && weights_ok && ks == [3, 3, 3];
    (
        ok,
        format!(
            "2d pass {} pairing {pairing:?}; 3d parities {} diagonal tensor {} ({} entries), triple weights {:?}, k {ks:?}",
            rep2.pass(),
            rep3.parity_pass(),
            rep3.comparison.exact_match,
            rep3.tensor.entries.len(),
            rep3.stabilizer_weights.keys().collect::<Vec<_>>()
        ),
    )
}

fn phase_identities() -> Outcome {
    let fig1 = sandwich_identity(4, 0).unwrap() == PhasePolynomial::monomial(&[1, 2, 3]);
    let round = composite_sandwich(&octaplex_quartets(), 0, 3)
        == PhasePolynomial::monomial(&[composite_var(1, 2), composite_var(2, 1), composite_var(3, 0)]);
    let mut all = true;
    for arity in 2..=4 {
        for flip in 0..arity {
            let rest: Vec<usize> = (0..arity).filter(|&v| v != flip).collect();
            all &= sandwich_identity(arity, flip).unwrap() == PhasePolynomial::monomial(&rest);
        }
    }
    (fig1 && round && all, format!("single sandwich {fig1}, quartet round {round}, all arities and flips {all}"))
}

fn determinism() -> Outcome {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_octaplex"))
            .args(["report", "--family", "octaplex", "--L", "2", "--json", "--threads", threads])
            .env_remove("OCTAPLEX_SEED")
            .output()
            .unwrap()
            .stdout
    };
    let (a, b) = (run("1"), run("8"));
    (!a.is_empty() && a == b, format!("{} bytes vs {} bytes", a.len(), b.len()))
}

fn negative_controls() -> Outcome {
    let cx = build_octaplex(2).unwrap();
    let fam = build_family(&cx).unwrap();
    let basis = build_logicals(&fam).unwrap();
    let mut missed = Vec::new();
    for seed in 0..16 {
        if !perturb_logical(&fam, &basis, &mut rng(seed)).detected() {
            missed.push(format!("logical seed {seed}"));
        }
    }
    // every single-qubit toggle of one representative
    for q in 0..fam.n() {
        let mut broken = basis.clone();
        broken.xbar[0][3].toggle(q);
        if octaplex::logicals::verify_lemma_a(&fam, &broken).holds {
            missed.push(format!("X toggle at {q}"));
        }
    }
    for seed in 0..4 {
        if !recolor_vertex(&cx, &mut rng(seed)).unwrap().detected() {
            missed.push(format!("recolor seed {seed}"));
        }
    }
    (missed.is_empty(), if missed.is_empty() { "every perturbation reported a witness".into() } else { missed.join(", ") })
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("lattice counts", lattice_counts),
        ("periodic code parameters", periodic_parameters),
        ("transversal CCCZ", transversal_cccz),
        ("distances", distances),
        ("metacheck ledger", metacheck_ledger),
        ("bounded family", bounded_family),
        ("warm-up codes", warmups),
        ("phase-polynomial identities", phase_identities),
        ("determinism", determinism),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        failed += usize::from(!ok);
        println!("criterion {:>2} {:<28} {}  {detail}", i + 1, name, if ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

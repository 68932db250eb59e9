use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gardenhose::bounds::{exhaustive_gh, injective_for_alice, injective_for_bob, GhSearch};
use gardenhose::ghcore::{computes, exit_side, parse_game, write_game};
use gardenhose::pbp::{alternate, compile_circuit, parse_netlist, program_to_game, Circuit};
use gardenhose::quantum::{build_mub, pv_mub_attack, Sampled};
use gardenhose::strategies::{build_eq, build_generic, build_xor, preprocess, LocalMap};
use gardenhose::tm::{compile_tm, equality, parse_tm, run, write_tm};
use gardenhose::BooleanFunction;

#[test]
fn netlist_to_game_through_text_formats() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let c = Circuit::random(&mut rng, 2, 3);
        let c = parse_netlist(&c.to_netlist()).unwrap();
        let p = compile_circuit(&c).unwrap();
        let g = program_to_game(&alternate(&p, 2).unwrap()).unwrap();
        let g = parse_game(&write_game(&g)).unwrap();
        let f = BooleanFunction::from_fn(2, |x, y| c.eval(x << 2 | y)).unwrap();
        assert!(computes(&g, &f).unwrap().holds);
    }
}

#[test]
fn machine_file_to_game() {
    let m = parse_tm(&write_tm(&equality(2))).unwrap();
    let compiled = compile_tm(&m).unwrap();
    let g = parse_game(&write_game(&compiled.game)).unwrap();
    for x in 0..4 {
        for y in 0..4 {
            assert_eq!(run(&m, x, y).unwrap().accepted, x == y);
            assert_eq!(exit_side(&g, x, y).unwrap().as_bit(), x == y);
        }
    }
}

#[test]
fn preprocessing_composes_with_equality() {
    // g(x, y) = EQ(x mod 2, y >> 1) on two-bit inputs
    let alpha = LocalMap::from_fn(2, 1, |x| x & 1).unwrap();
    let beta = LocalMap::from_fn(2, 1, |y| y >> 1).unwrap();
    let g = preprocess(&build_eq(1).unwrap(), &alpha, &beta).unwrap();
    let f = BooleanFunction::from_fn(2, |x, y| x & 1 == y >> 1).unwrap();
    assert!(computes(&g, &f).unwrap().holds);
    assert_eq!(g.size(), build_eq(1).unwrap().size());
}

#[test]
fn generic_construction_on_random_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=3 {
        let cells: Vec<bool> = (0..1 << (2 * n)).map(|_| rng.gen()).collect();
        let f = BooleanFunction::from_fn(n, |x, y| cells[(x << n | y) as usize]).unwrap();
        let g = build_generic(&f).unwrap();
        assert_eq!(g.size(), (1 << n) + 1);
        assert!(computes(&g, &f).unwrap().holds);
    }
}

#[test]
fn search_agrees_with_the_three_pipe_xor() {
    let f = BooleanFunction::xor(1).unwrap();
    let GhSearch::Exact { size, witness } = exhaustive_gh(&f).unwrap() else { panic!("xor is found") };
    assert_eq!(size, build_xor().size());
    assert!(computes(&witness, &f).unwrap().holds);
    assert!(injective_for_alice(&f) && injective_for_bob(&f));
}

#[test]
fn mub_attack_three_qubits() {
    let fam = build_mub(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for a in 0..9 {
        let x = rng.gen_range(0..8);
        assert_eq!(pv_mub_attack(&fam, a, x, &mut Sampled(&mut rng)).unwrap().x_hat, x);
    }
}

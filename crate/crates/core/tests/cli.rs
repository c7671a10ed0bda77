mod common;

use common::{every_command, run_cli, Fixtures};

#[test]
fn every_command_has_the_expected_exit_status() {
    let f = Fixtures::new("exit");
    for (args, expected) in every_command(&f) {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = run_cli(&refs);
        assert_eq!(code, expected, "{args:?}\nstdout:\n{out}\nstderr:\n{err}");
        assert!(err.is_empty(), "{args:?}: {err}");
    }
}

#[test]
fn mul_bicyclic_words() {
    assert_eq!(run_cli(&["mul", "--monoid", "bicyclic", "q", "p"]).1, "q^1p^1\n");
    assert_eq!(run_cli(&["mul", "q^2p^3", "qp^4"]).1, "q^2p^6\n");
    assert_eq!(run_cli(&["mul", "--monoid", "cyclic:3", "g", "g2"]).1, "e\n");
}

#[test]
fn bicyclic_witness_report() {
    let (code, out, _) = run_cli(&["finiteness", "bicyclic-witness", "--field", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "field: GF(2)\nA = [p^1]\nB = [q^1]\nAB = [1] = I\nBA = [q^1p^1] != I\n"
    );
}

#[test]
fn sentence_solve_reports_the_least_witness() {
    let (code, out, _) = run_cli(&["sentence", "solve", "--monoid", "bicyclic", "--support", "p,q", "--dim", "1", "--field", "2"]);
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "variables: 4\nspace: 16\nSAT\nx[1,1,p^1] = 1\nx[1,1,q^1] = 0\ny[1,1,p^1] = 0\ny[1,1,q^1] = 1\n\
         A = [p^1]\nB = [q^1]\nBA = [q^1p^1]\n"
    );
    let (code, out, _) = run_cli(&["sentence", "solve", "--support", "p,p^2"]);
    assert_eq!(code, 0);
    assert!(out.contains("UNSAT\nnote: 1 is not in S^2"), "{out}");
}

#[test]
fn json_reports_have_the_stable_keys() {
    let (_, out, _) = run_cli(&["--format", "json", "sentence", "solve", "--support", "p,q"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "inputs", "stats", "verdict", "witness"]);
    assert_eq!(v["verdict"], "sat");
    assert_eq!(v["witness"]["A"], serde_json::json!([["p^1"]]));

    let (_, out, _) = run_cli(&["--format", "json", "mul", "p", "q"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["stats"]["product"], "1");
    assert!(v.get("witness").is_none());
}

#[test]
fn emitted_json_parses_back() {
    let (code, out, _) = run_cli(&["--format", "json", "sentence", "emit", "--support", "p,q"]);
    assert_eq!(code, 0);
    let sys = monalg::sentence::PolySystem::from_json(&out).unwrap();
    assert_eq!(sys.variables.len(), 4);
    assert_eq!((sys.equations.len(), sys.negated_block.len()), (4, 4));
    assert_eq!(sys.meta.field.as_deref(), Some("2"));
}

#[test]
fn input_errors_exit_2_with_positions() {
    let f = Fixtures::new("errors");
    let (code, _, err) = run_cli(&["mat-mul", &f.path("bad.mat"), &f.path("p.mat")]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3, column 4"), "{err}");
    let bad_table = f.write("bad.table", "elements: e a\nrow: e a\nrow: a b\n");
    let spec = format!("table:{}", bad_table.display());
    let (code, _, err) = run_cli(&["--monoid", &spec, "mul", "e", "a"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3, column 8"), "{err}");
    assert_eq!(run_cli(&["--field", "4", "--monoid", "bicyclic", "mul", "p"]).0, 2);
    assert_eq!(run_cli(&["--field", "6", "mul", "p", "q"]).0, 2);
    assert_eq!(run_cli(&["--budget", "8", "sentence", "solve", "--support", "p,q"]).0, 2);
    assert_eq!(run_cli(&["finiteness", "certify", "--matrixA", &f.path("p.mat"), "--matrixB", &f.path("q.mat")]).0, 2);
    let (code, _, err) = run_cli(&["sentence", "emit", "--support", "p,p"]);
    assert_eq!(code, 2);
    assert!(err.contains("duplicate"), "{err}");
}

#[test]
fn psi_and_psi_inverse_commands() {
    let f = Fixtures::new("psi");
    let (_, out, _) = run_cli(&["psi", "--matrix", &f.path("pq_sum.mat")]);
    assert_eq!(out, "memory: p^1 q^1\nmu1(c) = c1(p^1) + c1(q^1)\n");
    let (code, out, _) = run_cli(&[
        "psi-inv", "--support", "1,p,q,p^2,qp,q^2", "--apply", &f.path("p.mat"), "--apply", &f.path("pq_sum.mat"),
    ]);
    assert_eq!(code, 0);
    // psi(p + q) o psi(p) = psi(p (p + q))
    assert_eq!(out, "1\n1 + p^2\n");
    let (code, _, err) = run_cli(&["psi-inv", "--support", "1,p", "--apply", &f.path("q.mat")]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn cellular_automaton_commands() {
    let f = Fixtures::new("ca");
    let c2 = ["--monoid", "cyclic:2"];
    let run = |rest: &[&str]| {
        let mut args = c2.to_vec();
        args.extend_from_slice(rest);
        run_cli(&args)
    };
    assert_eq!(run(&["ca-apply", "--rule", &f.path("xor.rule"), "--pattern", &f.path("c2.pat")]).1, "e := 1\ng := 1\n");
    assert_eq!(
        run(&["ca-min-memory", &f.path("padded.rule")]).1,
        "alphabet: 2\nmemory: e\ntable: 01\n"
    );
    let composed = run(&["ca-compose", &f.path("shift.rule"), &f.path("shift.rule")]).1;
    assert_eq!(composed, "alphabet: 2\nmemory: e\ntable: 01\n");
}

#[test]
fn sentence_check_messages() {
    let (code, out, _) = run_cli(&["--monoid", "cyclic:2", "sentence", "check", "--support", "e,g", "--assignment", "1,0,1,0"]);
    assert_eq!(code, 1);
    assert_eq!(out, "fails: P(Y,X) holds as well, so BA = I\n");
}

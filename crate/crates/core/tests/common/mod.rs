#![allow(dead_code)]

use std::path::{Path, PathBuf};

pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["monalg"];
    full.extend_from_slice(args);
    let code = monalg::cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// A scratch directory holding the input files used by the CLI tests.
pub struct Fixtures {
    dir: PathBuf,
}

impl Fixtures {
    pub fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("monalg-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let f = Fixtures { dir };
        f.write("p.mat", "1\np\n");
        f.write("q.mat", "1\nq\n");
        f.write("pq_sum.mat", "1\np + q\n");
        f.write("a2.mat", "2\np; 1 + q\n0; q^2\n");
        f.write("b2.mat", "2\nq; 0\np; 1\n");
        f.write("bad.mat", "2\np; q\n0; r\n");
        f.write("unit_c3.mat", "1\ng\n");
        f.write("unit_c3_inv.mat", "1\ng2\n");
        f.write("xor.rule", "alphabet: 2\nmemory: e g\ntable: 0110\n");
        f.write("shift.rule", "alphabet: 2\nmemory: g\ntable: 01\n");
        f.write("padded.rule", "alphabet: 2\nmemory: e g\ntable: 0011\n");
        f.write("c2.pat", "e := 1\ng := 0\n");
        f.write("v.pat", "1 := 1\np := 0\nq := 1\np^2 := 1\nqp := 1\n");
        f.write("v2.pat", "1 := 1, 0\np := 0, 1\nq := 1, 1\nq^2 := 0, 1\n");
        f.write("z2.table", "elements: e z\nrow: e z\nrow: z z\n");
        f
    }

    pub fn write(&self, name: &str, content: &str) -> PathBuf {
        let p = self.dir.join(name);
        std::fs::write(&p, content).unwrap();
        p
    }

    pub fn path(&self, name: &str) -> String {
        self.dir.join(name).display().to_string()
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

impl Drop for Fixtures {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

/// One invocation of every subcommand, with the expected exit status.
pub fn every_command(f: &Fixtures) -> Vec<(Vec<String>, i32)> {
    let p = |n: &str| f.path(n);
    let table = format!("table:{}", p("z2.table"));
    let cmds: Vec<(Vec<String>, i32)> = vec![
        (vec!["mul".into(), "p".into(), "q".into()], 0),
        (vec!["--monoid".into(), table.clone(), "mul".into(), "z".into(), "z".into()], 0),
        (vec!["--field".into(), "3".into(), "amul".into(), "p + 2*q".into(), "q + p".into()], 0),
        (vec!["mat-mul".into(), p("a2.mat"), p("b2.mat")], 0),
        (vec!["--field".into(), "3".into(), "conv".into(), "--pattern".into(), p("v.pat"), "--alpha".into(), "p + 2*q".into(), "--window".into(), "1,p".into()], 0),
        (vec!["--monoid".into(), "cyclic:2".into(), "ca-apply".into(), "--rule".into(), p("xor.rule"), "--pattern".into(), p("c2.pat")], 0),
        (vec!["--monoid".into(), "cyclic:2".into(), "ca-compose".into(), p("xor.rule"), p("shift.rule")], 0),
        (vec!["--monoid".into(), "cyclic:2".into(), "ca-min-memory".into(), p("padded.rule")], 0),
        (vec!["--monoid".into(), "cyclic:2".into(), "ca-scan-surjunctivity".into(), "--alphabet".into(), "2".into()], 0),
        (vec!["psi".into(), "--matrix".into(), p("pq_sum.mat")], 0),
        (vec!["psi-inv".into(), "--support".into(), "1,p,q,p^2,qp,q^2".into(), "--apply".into(), p("p.mat"), "--apply".into(), p("pq_sum.mat")], 0),
        (vec!["lca-apply".into(), "--matrix".into(), p("a2.mat"), "--pattern".into(), p("v2.pat"), "--window".into(), "1".into()], 0),
        (vec!["--field".into(), "4".into(), "--seed".into(), "5".into(), "lca-check-antihom".into(), "--dim".into(), "2".into()], 0),
        (vec!["lca-check-antihom".into(), "--matrixA".into(), p("a2.mat"), "--matrixB".into(), p("b2.mat")], 0),
        (vec!["--monoid".into(), "cyclic:3".into(), "finiteness".into(), "certify".into(), "--matrixA".into(), p("unit_c3.mat"), "--matrixB".into(), p("unit_c3_inv.mat")], 0),
        (vec!["finiteness".into(), "bicyclic-witness".into(), "--field".into(), "2".into()], 0),
        (vec!["sentence".into(), "emit".into(), "--support".into(), "p,q".into(), "--dim".into(), "1".into()], 0),
        (vec!["sentence".into(), "solve".into(), "--support".into(), "p,q".into(), "--dim".into(), "1".into(), "--field".into(), "2".into()], 1),
        (vec!["--workers".into(), "4".into(), "sentence".into(), "solve".into(), "--support".into(), "p,q".into(), "--field".into(), "3".into()], 1),
        (vec!["--monoid".into(), "cyclic:2".into(), "sentence".into(), "solve".into(), "--support".into(), "e,g".into(), "--dim".into(), "2".into(), "--workers".into(), "4".into()], 0),
        (vec!["sentence".into(), "check".into(), "--support".into(), "p,q".into(), "--assignment".into(), "1,0,0,1".into()], 0),
        (vec!["sentence".into(), "check".into(), "--support".into(), "p,q".into(), "--assignment".into(), "0,0,0,0".into()], 1),
        (vec!["enumerate-monoids".into(), "--order".into(), "3".into()], 0),
    ];
    cmds
}

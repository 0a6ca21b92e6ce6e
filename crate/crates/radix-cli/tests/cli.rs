use std::process::{Command, Output};

use num_bigint::BigInt;
use radix_core::verify::certify_with_budget;
use radix_core::{ring_of_integers, FieldSpec, OrderLattice};
use serde_json::Value;

fn radix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radix"))
        .args(args)
        .env_remove("RADIX_ORACLE_BUDGET")
        .output()
        .expect("spawn radix")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = radix(&all);
    assert!(o.status.success(), "{:?}", o);
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn big(v: &Value) -> BigInt {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn basis_quadratic() {
    let v = json(&["basis", "--n", "2", "--a", "5"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["disc"]["value"], "5");
    assert_eq!(v["basis"]["den"], "2");
    assert_eq!(
        v["basis"]["mat"],
        serde_json::json!([["2", "0"], ["1", "1"]])
    );
    assert_eq!(v["labels"][1], "eta_1/2·beta^0");
    assert_eq!(v["certificate"]["certified"], true);
    assert_eq!(v["certificate"]["oracle_match"], true);
}

#[test]
fn basis_4_12() {
    let v = json(&["basis", "--n", "4", "--a", "12"]);
    assert_eq!(v["disc"]["value"], "-1728");
    assert_eq!(
        v["disc"]["factors"],
        serde_json::json!([["2", 6], ["3", 3]])
    );
    assert_eq!(v["basis"]["mat"].as_array().unwrap().len(), 4);
}

#[test]
fn reducible_exits_2() {
    let o = radix(&["basis", "--n", "4", "--a", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a is a p-th power (p=2)"));
}

#[test]
fn incomplete_factorization_exits_3_and_hint_recovers() {
    // (2^61 - 1)(2^63 - 25) is out of reach of the default rho budget.
    let p: BigInt = (BigInt::from(1) << 61) - 1;
    let q: BigInt = (BigInt::from(1) << 63) - 25;
    let a = (&p * &q).to_string();
    let o = radix(&["basis", "--n", "3", "--a", &a, "--no-oracle"]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(String::from_utf8_lossy(&o.stderr).contains("--factor-a"));
    let hint = format!("{}:1", p);
    let o = radix(&[
        "basis",
        "--n",
        "3",
        "--a",
        &a,
        "--factor-a",
        &hint,
        "--no-oracle",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn local_examples() {
    let v = json(&["local", "--n", "2", "--a", "17", "--q", "2"]);
    assert_eq!(v["local"]["residue"], "F2 x F2");
    assert_eq!(v["disc_drop"], 2);
    let v = json(&["local", "--n", "4", "--a", "45", "--q", "3"]);
    assert_eq!(v["local"]["index_vq"], 2);
    assert_eq!(v["disc_drop"], 4);
    let o = radix(&["local", "--n", "2", "--a", "5", "--q", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("already q-maximal"));
    assert_eq!(
        radix(&["local", "--n", "2", "--a", "5", "--q", "4"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn tabulate_quadratic_rule() {
    let o = radix(&[
        "tabulate",
        "--n-range",
        "2..2",
        "--a-range",
        "2..10",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let rows: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 9);
    for row in rows {
        let a = row["a"].as_i64().unwrap();
        let squarefree = (2..=3).all(|d| a % (d * d) != 0);
        if a == 4 || a == 9 {
            assert_eq!(row["status"], "skipped");
            continue;
        }
        assert_eq!(row["status"], "ok");
        if squarefree {
            let d = if a % 4 == 1 { a } else { 4 * a };
            assert_eq!(row["disc"], d.to_string(), "a = {}", a);
        }
        assert_eq!(row["certified"], true);
    }
}

#[test]
fn tabulate_wieferich_levels() {
    let o = radix(&[
        "tabulate",
        "--n-range",
        "2..8",
        "--a-range",
        "17..17",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    for (n, f0) in [(2, 1), (4, 2), (8, 3)] {
        let line = out
            .lines()
            .find(|l| l.starts_with(&format!("{},17,", n)))
            .unwrap();
        assert!(line.contains(&format!("coprime w=4 f0={}", f0)), "{}", line);
    }
    let ns: Vec<i64> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ns, (2..=8).collect::<Vec<_>>());
}

#[test]
fn tabulate_empty_and_reducible() {
    let o = radix(&["tabulate", "--n-range", "5..4", "--a-range", "1..3"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let o = radix(&[
        "tabulate",
        "--n-range",
        "2..3",
        "--a-range",
        "0..1",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let rows: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["status"] == "skipped"), "{:?}", rows);
}

#[test]
fn json_basis_round_trips_through_certify() {
    for (n, a) in [(2, 5), (4, 12), (6, 32), (9, 270), (10, -40)] {
        let v = json(&["basis", "--n", &n.to_string(), "--a", &a.to_string()]);
        let den = big(&v["basis"]["den"]);
        let rows: Vec<Vec<BigInt>> = v["basis"]["mat"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r.as_array().unwrap().iter().map(big).collect())
            .collect();
        let lattice = OrderLattice::from_int_rows(n, &den, &rows).unwrap();
        let spec = FieldSpec::new(n, a).unwrap();
        let mut result = ring_of_integers(&spec).unwrap();
        assert_eq!(result.ring, lattice);
        result.ring = lattice;
        assert!(certify_with_budget(&result, 24).is_certified());
    }
}

#[test]
fn text_and_json_factorizations_agree() {
    for (n, a) in [(3, 10), (6, 2), (12, 18), (8, -3)] {
        let (n, a) = (n.to_string(), a.to_string());
        let v = json(&["basis", "--n", &n, "--a", &a]);
        let text = stdout(&radix(&["basis", "--n", &n, "--a", &a]));
        let mut parts: Vec<String> = Vec::new();
        if v["disc"]["sign"] == -1 {
            parts.push("-1".into());
        }
        for f in v["disc"]["factors"].as_array().unwrap() {
            let (q, e) = (f[0].as_str().unwrap(), f[1].as_u64().unwrap());
            parts.push(if e == 1 {
                q.to_string()
            } else {
                format!("{}^{}", q, e)
            });
        }
        let line = format!(
            "disc: {} = {}",
            v["disc"]["value"].as_str().unwrap(),
            parts.join(" * ")
        );
        assert!(text.lines().any(|l| l == line), "{}\n{}", line, text);
    }
}

#[test]
fn oracle_budget_flag_and_env() {
    let v = json(&["basis", "--n", "5", "--a", "7", "--oracle-budget", "4"]);
    assert_eq!(v["certificate"]["oracle_match"], Value::Null);
    assert_eq!(v["certificate"]["certified"], true);
    let o = Command::new(env!("CARGO_BIN_EXE_radix"))
        .args(["basis", "--n", "5", "--a", "7", "--format", "json"])
        .env("RADIX_ORACLE_BUDGET", "4")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certificate"]["oracle_match"], Value::Null);
    let v = json(&["basis", "--n", "5", "--a", "7", "--no-oracle"]);
    assert_eq!(v["certificate"]["oracle_match"], Value::Null);
}

use std::fs;
use std::path::PathBuf;

use pcfheight::enumeration::{
    enumerate_pcf_cubics, enumerate_pcf_quadratics, family_scan, write_cubic_run, write_quadratic_run,
    EnumerationConfig, Family, FamilyRow,
};
use pcfheight::heights::HeightBudget;
use pcfheight::numerics::rational::int;
use pcfheight::pcf::Stage;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pcfheight-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    dir
}

#[test]
fn identical_configs_write_identical_files() {
    let base = scratch("determinism");
    let one = EnumerationConfig { workers: 1, ..EnumerationConfig::default() };
    let many = EnumerationConfig { workers: 4, ..EnumerationConfig::default() };
    let a = write_cubic_run(&enumerate_pcf_cubics(&one).unwrap(), &base.join("a")).unwrap();
    let b = write_cubic_run(&enumerate_pcf_cubics(&many).unwrap(), &base.join("b")).unwrap();
    assert_eq!(a.dir.file_name(), b.dir.file_name());
    for (x, y) in [(&a.csv, &b.csv), (&a.jsonl, &b.jsonl), (&a.summary, &b.summary)] {
        assert!(fs::read(x).unwrap() == fs::read(y).unwrap(), "{} differs", x.display());
    }
    let header = fs::read_to_string(&a.csv).unwrap();
    assert!(header.starts_with("a,b,A,B,stage,verdict,witness,orbit_len\n"));
    fs::remove_dir_all(&base).unwrap();
}

#[test]
fn weaker_archimedean_sieve_reaches_the_same_list() {
    let default = enumerate_pcf_cubics(&EnumerationConfig::default()).unwrap();
    let weak = enumerate_pcf_cubics(&EnumerationConfig { n_arch: 5, ..EnumerationConfig::default() }).unwrap();
    assert!(weak.survivors_after("arch").unwrap() > 86);
    assert_eq!(weak.pairs(), default.pairs());
    assert!(weak.undecided.is_empty());
}

#[test]
fn stages_partition_the_grid() {
    let r = enumerate_pcf_cubics(&EnumerationConfig::default()).unwrap();
    let mut eliminated = 0;
    for s in &r.stage_counts {
        eliminated += s.eliminated;
        assert_eq!(eliminated + s.survivors, 3895, "{}", s.stage);
    }
    let survivors = r.records.iter().filter(|x| x.stage == Stage::Survived).count();
    assert_eq!(survivors, r.survivors_after("padic3").unwrap());
    // every survivor carries a certificate or an undecided flag
    assert!(r.records.iter().filter(|x| x.stage == Stage::Survived).all(|x| x.verdict.is_some()));
    // the final list is closed under B -> -B
    for (a, b) in r.pairs() {
        assert!(r.pairs().contains(&(a, -b)));
    }
    assert!(r.records.iter().all(|x| x.replay()));
}

#[test]
fn strict_mode_passes_when_everything_is_decided() {
    let r = enumerate_pcf_cubics(&EnumerationConfig { strict: true, ..EnumerationConfig::default() });
    assert!(r.is_ok());
    let starved = EnumerationConfig { strict: true, certify_iterations: 1, ..EnumerationConfig::default() };
    assert!(enumerate_pcf_cubics(&starved).is_err());
}

#[test]
fn quadratic_run_records_its_grid() {
    let base = scratch("quadratic");
    let cfg = EnumerationConfig::default();
    let q = enumerate_pcf_quadratics(&cfg).unwrap();
    let files = write_quadratic_run(&q, &cfg, &base).unwrap();
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(&files.summary).unwrap()).unwrap();
    assert_eq!(summary["grid_size"], 5);
    assert_eq!(summary["pcf"], serde_json::json!(["-2", "-1", "0"]));
    assert!(summary["grid_derivation"].as_str().unwrap().contains("|c| > 2"));
    fs::remove_dir_all(&base).unwrap();
}

#[test]
fn config_files_drive_the_run() {
    let cfg: EnumerationConfig = "n_arch = 5\nprimes = 2, 3\n".parse().unwrap();
    assert_eq!(cfg.n_arch, 5);
    assert_ne!(cfg.digest(), EnumerationConfig::default().digest());
    assert!("primes = 2, 9".parse::<EnumerationConfig>().is_err());
}

#[test]
fn family_csv_rows() {
    let rows = family_scan(Family::UnicriticalTail, 3, &[int(10), int(1000)], &HeightBudget::default()).unwrap();
    assert_eq!(FamilyRow::CSV_HEADER.split(',').count(), rows[0].csv_line(false).split(',').count());
    assert_eq!(FamilyRow::CSV_HEADER.split(',').count(), rows[0].csv_line(true).split(',').count());
    assert!(rows[1].csv_line(false).ends_with(",2/3,ok"));
    let empty = family_scan(Family::SuperattractingZero, 3, &[], &HeightBudget::default()).unwrap();
    assert!(empty.is_empty());
}

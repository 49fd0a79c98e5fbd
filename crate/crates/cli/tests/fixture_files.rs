//! The JSON files under `fixtures/` are the serialized library fixtures.
//! Run with `UPDATE_FIXTURES=1` to rewrite them.

use std::path::PathBuf;

use origin_resync::fixtures as rf;
use origin_transducer::fixtures as tf;
use origin_transducer::{Class, TwoWayTransducer};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn empty_language() -> TwoWayTransducer {
    let sigma = vec![origin_automata::Symbol::atom("a")];
    let mut t = TwoWayTransducer::new(sigma.clone(), sigma);
    let p = t.add_state("p", Class::R);
    t.set_initial(p);
    t
}

fn documents() -> Vec<(&'static str, String)> {
    vec![
        ("figure.json", tf::figure_transducer().to_json()),
        ("copier.json", tf::copier(&["a"]).to_json()),
        ("copier-ab.json", tf::copier(&["a", "b"]).to_json()),
        ("shifted-copier.json", tf::shifted_copier().to_json()),
        ("first-emitter.json", tf::first_emitter().to_json()),
        ("last-emitter.json", tf::last_emitter().to_json()),
        ("copy-then-reverse.json", tf::copy_then_reverse().to_json()),
        ("empty.json", empty_language().to_json()),
        ("resync-identity.json", rf::identity().to_json()),
        ("resync-universal.json", rf::universal().to_json()),
        ("resync-plus-minus-one.json", rf::plus_minus_one().to_json()),
        ("resync-first-to-last.json", rf::first_to_last().to_json()),
        ("resync-parity.json", rf::b_parity().to_json()),
        ("resync-monotone.json", rf::monotone().to_json()),
    ]
}

#[test]
fn fixture_files_are_current() {
    let update = std::env::var_os("UPDATE_FIXTURES").is_some();
    for (name, text) in documents() {
        let path = dir().join(name);
        if update {
            std::fs::create_dir_all(dir()).unwrap();
            std::fs::write(&path, format!("{text}\n")).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk.trim_end(), text, "{name} is stale");
    }
}

#[test]
fn fixture_files_load() {
    for (name, _) in documents() {
        let path = dir().join(name);
        let path = path.to_str().unwrap();
        if name.starts_with("resync-") {
            origin_cli::read_resynchronizer(path).unwrap();
        } else {
            origin_cli::read_transducer(path).unwrap();
        }
    }
}

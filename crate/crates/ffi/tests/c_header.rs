//! Compiles a small C program against the generated header and the static
//! library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <stdlib.h>
#include "xgraph.h"

static char *slurp(const char *path) {
    FILE *f = fopen(path, "rb");
    if (!f) return NULL;
    fseek(f, 0, SEEK_END);
    long n = ftell(f);
    rewind(f);
    char *buf = malloc(n + 1);
    fread(buf, 1, n, f);
    buf[n] = 0;
    fclose(f);
    return buf;
}

int main(int argc, char **argv) {
    char *text = slurp(argv[1]);
    XgGraph *g = NULL;
    if (xg_graph_from_json(text, &g) != XG_STATUS_OK) return 10;
    free(text);
    XgVerdict v;
    if (xg_verify(g, &v) != XG_STATUS_OK) return 11;
    XgGraph *p = NULL;
    if (xg_prune(g, &p, NULL) != XG_STATUS_OK) return 12;
    char *poly = NULL;
    if (xg_export_poly(g, &poly) != XG_STATUS_OK) return 13;
    printf("valid=%d mu=%zu matchings=%zu pruned_edges=%zu\n", v.is_valid, v.mu, v.matching_count, xg_graph_edge_count(p));
    printf("%s", poly);
    xg_string_free(poly);
    xg_graph_free(p);
    xg_graph_free(g);
    if (xg_graph_from_json("{", &g) != XG_STATUS_INPUT) return 14;
    printf("error: %s\n", xg_last_error_message()[0] ? "set" : "empty");
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let built = Command::new(cargo)
        .args(["build", "-p", "xgraph-ffi", "--lib", "--manifest-path"])
        .arg(manifest.join("Cargo.toml"))
        .status()
        .unwrap();
    assert!(built.success());
    let lib = profile_dir.join("libxgraph_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());

    let out = Command::new(&bin).arg(manifest.join("../core/fixtures/ghz62_fig1.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("valid=1 mu=2 matchings=4 pruned_edges=6"));
    assert_eq!(lines.clone().count(), 4);
    assert!(stdout.ends_with("error: set\n"));
}

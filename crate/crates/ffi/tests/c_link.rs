//! Compiles a small C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "discplan.h"

int main(int argc, char **argv) {
    FILE *f = fopen(argv[1], "rb");
    static char buf[1 << 20];
    size_t n = fread(buf, 1, sizeof buf - 1, f);
    buf[n] = 0;
    fclose(f);

    DpScenario *s = NULL;
    if (dp_scenario_from_json(buf, &s) != DP_STATUS_OK) return 10;
    DpPlan *p = NULL;
    if (dp_plan(s, &p) != DP_STATUS_OK) return 11;
    char *json = NULL;
    if (dp_plan_to_json(p, &json) != DP_STATUS_OK) return 12;
    int ok = strstr(json, "\"steps\"") != NULL;
    printf("%zu %.6f %.6f\n", dp_plan_step_count(p), dp_plan_total_cost(p), dp_plan_lower_bound(p));
    dp_string_free(json);
    dp_plan_free(p);
    if (dp_scenario_from_json("[", &s) != DP_STATUS_INVALID_INPUT) return 13;
    if (strlen(dp_last_error_message()) == 0) return 14;
    return ok ? 0 : 15;
}
"#;

#[test]
fn c_program_links_and_plans() {
    // target/<profile>/deps/<this test> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libdiscplan_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());

    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c_link");
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("main.c");
    let bin = tmp.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let scenario = tmp.join("scenario.json");
    std::fs::write(
        &scenario,
        discplan::bench::generate(discplan::bench::Family::Cross, 3, 5)
            .unwrap()
            .to_json(),
    )
    .unwrap();

    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler available");
    assert!(status.success());

    let out = Command::new(&bin).arg(&scenario).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let line = String::from_utf8(out.stdout).unwrap();
    let fields: Vec<f64> = line
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(fields[0], 3.0);
    assert!(fields[1] >= fields[2] - 1e-6);
}

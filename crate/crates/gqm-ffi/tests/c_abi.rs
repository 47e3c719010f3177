//! Compile and run the C demo against the handwritten header and the built
//! shared library, proving the header matches the actual ABI.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_demo_compiles_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let demo = manifest.join("c-demo/demo.c");

    // Produce the shared library now; cargo only keeps uplifted artifacts for
    // targets of the current invocation, so it may be absent at test time.
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let build = Command::new(&cargo)
        .args(["build", "-p", "gqm-ffi", "--lib"])
        .current_dir(&manifest)
        .output()
        .expect("cargo not runnable");
    assert!(
        build.status.success(),
        "cdylib build failed:\n{}",
        String::from_utf8_lossy(&build.stderr)
    );

    // target/debug relative to the workspace root
    let lib_dir = manifest
        .parent()
        .and_then(|p| p.parent())
        .map(|p| p.join("target").join(if cfg!(debug_assertions) { "debug" } else { "release" }))
        .expect("workspace layout");
    let lib = lib_dir.join("libgqm_ffi.so");
    assert!(lib.exists(), "cdylib not found at {}", lib.display());

    let out_dir = std::env::temp_dir().join("gqm-ffi-c-demo");
    std::fs::create_dir_all(&out_dir).unwrap();
    let binary = out_dir.join("demo");

    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let compile = Command::new(&cc)
        .arg(&demo)
        .arg("-I")
        .arg(&include)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-lgqm_ffi")
        .arg("-o")
        .arg(&binary)
        .output()
        .expect("C compiler not runnable");
    assert!(
        compile.status.success(),
        "compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary)
        .env("LD_LIBRARY_PATH", &lib_dir)
        .output()
        .expect("demo did not start");
    assert!(
        run.status.success(),
        "demo exited nonzero:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("C ABI demo passed"), "unexpected output: {stdout}");
}

// Links the distro OpenBLAS (which bundles LAPACK) for ndarray-linalg's
// LAPACK bindings; no vendored BLAS build.
fn main() {
    println!("cargo:rustc-link-lib=dylib=openblas");
}

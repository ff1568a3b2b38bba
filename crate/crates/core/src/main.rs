fn main() {
    std::process::exit(sextic_bvp::cli::run());
}

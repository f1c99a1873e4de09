fn main() -> std::process::ExitCode {
    precedent::cli::main()
}

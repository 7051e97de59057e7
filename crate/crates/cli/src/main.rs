fn main() -> std::process::ExitCode {
    grid_realizer_cli::main_entry()
}

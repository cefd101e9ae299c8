"""Generate per-module API reference pages.

Run by mkdocs-gen-files at build time. Writes one page per module of the
workspace packages, plus a SUMMARY.md for literate-nav to pick up.
"""

from pathlib import Path

import mkdocs_gen_files

PACKAGES = ("refgroup-core", "refgroup-algebra", "refgroup-verify")

nav = mkdocs_gen_files.Nav()

for package in PACKAGES:
    src_root = Path(package, "src")
    for path in sorted(src_root.rglob("*.py")):
        module_path = path.relative_to(src_root).with_suffix("")
        doc_path = path.relative_to(src_root).with_suffix(".md")
        parts = tuple(module_path.parts)

        # __main__ only calls the command line entry point
        if parts[-1] == "__main__":
            continue
        if parts[-1] == "__init__":
            parts = parts[:-1]
            doc_path = doc_path.with_name("index.md")

        nav[parts] = doc_path.as_posix()
        full_doc_path = Path("api", doc_path)
        with mkdocs_gen_files.open(full_doc_path, "w") as fd:
            fd.write(f"::: {'.'.join(parts)}\n")
        mkdocs_gen_files.set_edit_path(full_doc_path, path.as_posix())

with mkdocs_gen_files.open("api/SUMMARY.md", "w") as nav_file:
    nav_file.writelines(nav.build_literate_nav())

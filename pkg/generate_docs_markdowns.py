"""
Regenerates the source code pages of the documentation site.

For every Python module of the package and of the tests it writes a page that
includes the module source, a _filelist.md with the first docstring line of
each module, and the "Source Code" section of the mkdocs.yml navigation. The
README is copied into docs/home with its links adjusted to the site layout.
"""
import os
import re

from ruamel.yaml import YAML

# Directories to process
SOURCE_DIRS = {
    "Coxcomm": "coxcomm",
    "Tests": "tests",
}

DOCS_OUTPUT_DIR = "docs/source_code"
MKDOCS_YML_PATH = "mkdocs.yml"
SKIPPED_FILES = {"__init__.py", "__main__.py"}

def adjust_readme_links(readme_path, output_path):
    with open(readme_path, "r", encoding="utf-8") as f:
        content = f.read()

    content = re.sub(r"\((LICENSE)\)", r"(./license.md)", content)
    content = re.sub(r"\b(coxcomm|tests)/(\w+)\.py\b", r"../source_code/\1/\2.md", content)

    with open(output_path, "w", encoding="utf-8") as f:
        f.write(content)

def extract_docstring(file_path):
    """
    First line of the module docstring, or None.

    Handles both a docstring that opens on its own line and one whose text
    starts on the opening line.
    """
    with open(file_path, "r", encoding="utf-8") as f:
        for line in f:
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if not stripped.startswith(('"""', "'''")):
                return None
            first = stripped[3:].strip().rstrip('"').rstrip("'").strip()
            if first:
                return first
            for doc_line in f:
                text = doc_line.strip().rstrip('"').rstrip("'").strip()
                if text:
                    return text
            return None
    return None

def generate_markdown_files():
    """Writes one page per module and a _filelist.md per section; returns the nav structure."""
    nav_structure = []
    for section, directory in SOURCE_DIRS.items():
        section_nav = {section: []}

        section_output_dir = os.path.join(DOCS_OUTPUT_DIR, directory)
        os.makedirs(section_output_dir, exist_ok=True)

        filelist_entries = []

        for file_name in sorted(os.listdir(directory)):
            if not file_name.endswith(".py") or file_name in SKIPPED_FILES:
                continue
            base_name = os.path.splitext(file_name)[0]
            # snippet paths are resolved by mkdocs, always with forward slashes
            src_path = f"{directory}/{file_name}"

            docstring = extract_docstring(os.path.join(directory, file_name))
            short_description = docstring or "No description available."

            md_file_path = os.path.join(section_output_dir, f"{base_name}.md")
            with open(md_file_path, "w", encoding="utf-8") as md_file:
                md_file.write(f"# {base_name}\n\n")
                md_file.write(f"```python\n--8<-- \"{src_path}\"\n```\n")

            section_nav[section].append({file_name: f"source_code/{directory}/{base_name}.md"})
            filelist_entries.append(f"- **_[{file_name}]({base_name}.md)_**: {short_description}")

        filelist_path = os.path.join(section_output_dir, "_filelist.md")
        with open(filelist_path, "w", encoding="utf-8") as filelist_file:
            filelist_file.write("\n".join(filelist_entries) + "\n")

        nav_structure.append(section_nav)

    return nav_structure

def update_mkdocs_yml(nav_structure):
    """Replaces the "Source Code" section of the mkdocs.yml navigation."""
    yaml = YAML()
    yaml.preserve_quotes = True

    with open(MKDOCS_YML_PATH, "r", encoding="utf-8") as f:
        mkdocs_config = yaml.load(f)

    if "nav" not in mkdocs_config:
        mkdocs_config["nav"] = []

    mkdocs_config["nav"] = [item for item in mkdocs_config["nav"] if "Source Code" not in item]
    mkdocs_config["nav"].append({"Source Code": nav_structure})

    with open(MKDOCS_YML_PATH, "w", encoding="utf-8") as f:
        yaml.dump(mkdocs_config, f)

if __name__ == "__main__":
    nav_structure = generate_markdown_files()
    update_mkdocs_yml(nav_structure)
    adjust_readme_links("README.md", "docs/home/readme.md")

    print("Markdown files, _filelist.md, and navigation updated successfully.")

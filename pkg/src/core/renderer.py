"""
Jinja2 Template Renderer for boosted-entanglement.

This module provides the TemplateRenderer class that handles:
- Loading report templates from the templates directory
- Rendering templates with context
- Custom filters (num, cplx, bullet)
"""

from pathlib import Path
from typing import Any

from jinja2 import Environment, FileSystemLoader, StrictUndefined


class TemplateRenderer:
    """
    Jinja2-based renderer for human-readable reports.

    Keeps the text layout of each report (Jinja2) apart from the physics (Python).

    Example:
        renderer = TemplateRenderer()
        text = renderer.render("wigner.j2", {"report": report})
    """

    def __init__(self, templates_dir: str | Path | None = None):
        """
        Initialize the template renderer.

        Args:
            templates_dir: Path to templates directory. Defaults to src/templates/
        """
        if templates_dir is None:
            templates_dir = Path(__file__).parent.parent / "templates"

        self.templates_dir = Path(templates_dir)
        self.env = Environment(
            loader=FileSystemLoader(str(self.templates_dir)),
            autoescape=False,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
            undefined=StrictUndefined,
        )
        self._register_filters()

    def _register_filters(self) -> None:
        """Register custom Jinja2 filters."""
        self.env.filters["num"] = self._num_filter
        self.env.filters["cplx"] = self._cplx_filter
        self.env.filters["bullet"] = self._bullet_filter

    @staticmethod
    def _num_filter(value: float | None, fmt: str = ".10g") -> str:
        """
        Format a float.

        Usage in template: {{ report.omega_plus | num }}
        """
        if value is None:
            return "n/a"
        return format(value, fmt)

    @staticmethod
    def _cplx_filter(pair, fmt: str = ".6f") -> str:
        """
        Format a complex number or an [re, im] pair as a+bi.

        Usage in template: {{ amp | cplx }}
        """
        re_part, im_part = (pair.real, pair.imag) if isinstance(pair, complex) else pair
        sign = "-" if im_part < 0 else "+"
        return f"{format(re_part, fmt)}{sign}{format(abs(im_part), fmt)}i"

    @staticmethod
    def _bullet_filter(items: list[str], bullet: str = "- ") -> str:
        """
        Format list as bullet points.

        Usage in template: {{ items | bullet }}
        """
        return "\n".join(f"{bullet}{item}" for item in items)

    def render(self, template_name: str, context: dict[str, Any] | None = None) -> str:
        """
        Render a template with the given context.

        Raises:
            jinja2.TemplateNotFound: If template doesn't exist
        """
        if context is None:
            context = {}

        template = self.env.get_template(template_name)
        return template.render(**context)

    def render_string(self, template_string: str, context: dict[str, Any] | None = None) -> str:
        """Render a template from a string."""
        if context is None:
            context = {}

        template = self.env.from_string(template_string)
        return template.render(**context)

"""Absorber construction: gadgets, templates, contraction, density and assembly."""

from .assembly import (
    AbsorbError,
    AbsorberAssembly,
    AbsorberParams,
    AbsorberReport,
    AssemblyError,
    absorb,
    assemble_absorber,
    verify_absorber,
)
from .contraction import ContractionResult, ContractionSpec, certify_contraction, contract, expansion_families
from .density import M3Result, m3_density
from .embed import EmbeddingResult, GadgetEmbedding, count_a2_embeddings, find_gadget_embedding
from .gadgets import GadgetTemplate, build_gadget_template
from .template import TemplateError, TemplateGraph, TemplateReport, build_template, verify_template

__all__ = [
    "AbsorbError",
    "AbsorberAssembly",
    "AbsorberParams",
    "AbsorberReport",
    "AssemblyError",
    "ContractionResult",
    "ContractionSpec",
    "EmbeddingResult",
    "GadgetEmbedding",
    "GadgetTemplate",
    "M3Result",
    "TemplateError",
    "TemplateGraph",
    "TemplateReport",
    "absorb",
    "assemble_absorber",
    "build_gadget_template",
    "build_template",
    "certify_contraction",
    "contract",
    "count_a2_embeddings",
    "expansion_families",
    "find_gadget_embedding",
    "m3_density",
    "verify_absorber",
    "verify_template",
]

import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Load environment variables (.env is optional, every setting has a default)
load_dotenv()

DEFAULT_DMAX = 25
DEFAULT_UNIVERSAL_CAP = 6


class Settings(BaseModel):
    d_max: int = Field(default=DEFAULT_DMAX, ge=0, description="default truncation degree for solve")
    universal_cap: int = Field(default=DEFAULT_UNIVERSAL_CAP, ge=0, description="largest order for universal obstructions")
    workers: int = Field(default=1, ge=1, description="process pool size for candidate checks")
    output_format: str = Field(default="text", pattern="^(text|json)$", description="CLI output format")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Settings read once from KOVACIC_* environment variables."""
    return Settings(
        d_max=int(os.getenv("KOVACIC_DMAX", DEFAULT_DMAX)),
        universal_cap=int(os.getenv("KOVACIC_UNIVERSAL_CAP", DEFAULT_UNIVERSAL_CAP)),
        workers=int(os.getenv("KOVACIC_WORKERS", 1)),
        output_format=os.getenv("KOVACIC_OUTPUT", "text"),
    )

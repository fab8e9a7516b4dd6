"""
qrap 설정
.env 파일과 환경 변수에서 값을 읽어 Settings 모델로 제공합니다.
"""

import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

# 환경 변수 로드
load_dotenv()


class Settings(BaseModel):
    """전역 설정 (환경 변수 QRAP_*)"""
    model_config = ConfigDict(frozen=True)

    prime_cap: int = Field(default=10**8, ge=3)
    table_threshold: int = Field(default=10**7, ge=3)
    workers: int = Field(default=1, ge=1)
    log_level: str = "WARNING"
    assert_floor: int = Field(default=1000, ge=3)
    subset_cap: int = Field(default=16, ge=1)
    enumerate_cap: int = Field(default=20, ge=1)
    search_cap: int = Field(default=10**6, ge=3)


_ENV_NAMES = {
    "prime_cap": "QRAP_PRIME_CAP",
    "table_threshold": "QRAP_TABLE_THRESHOLD",
    "workers": "QRAP_WORKERS",
    "log_level": "QRAP_LOG_LEVEL",
    "assert_floor": "QRAP_ASSERT_FLOOR",
    "subset_cap": "QRAP_SUBSET_CAP",
    "enumerate_cap": "QRAP_ENUMERATE_CAP",
    "search_cap": "QRAP_SEARCH_CAP",
}


def settings_from_env() -> Settings:
    """환경 변수에서 Settings 생성 (설정되지 않은 값은 기본값)"""
    values = {}
    for field_name, env_name in _ENV_NAMES.items():
        raw = os.getenv(env_name)
        if raw is not None and raw.strip():
            values[field_name] = raw.strip()
    return Settings.model_validate(values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return settings_from_env()

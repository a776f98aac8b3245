import uvicorn

from app.config import configure_logging, get_settings

if __name__ == "__main__":
    settings = get_settings()
    configure_logging(settings.log_level)
    uvicorn.run(
        "app.main:app",
        host=settings.host,
        port=settings.port,
        reload=settings.reload,  # Auto-reload on code changes
        log_level=settings.log_level.lower(),
    )

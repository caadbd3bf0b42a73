from django.urls import path, include
from rest_framework.routers import DefaultRouter
from .views import DerivView, IntegralView, MLView, VerificationRunViewSet

# Stored verification runs go through the router; evaluations are plain views
router = DefaultRouter()
router.register(r'runs', VerificationRunViewSet)

urlpatterns = [
    path('ml/', MLView.as_view(), name='ml'),
    path('deriv/', DerivView.as_view(), name='deriv'),
    path('integral/', IntegralView.as_view(), name='integral'),
    path('', include(router.urls)),
]

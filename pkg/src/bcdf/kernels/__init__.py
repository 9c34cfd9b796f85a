from .base import BaseKernel, KernelName
from .boundary import BoundaryKernelFamily, FamilyName

__all__ = ['BaseKernel', 'BoundaryKernelFamily', 'FamilyName', 'KernelName']
